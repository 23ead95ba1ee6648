#include "jwcontext/optimize.hpp"

#include "jwcontext/random.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace jwcontext {

namespace {

constexpr double kDegenerateBloch = 1e-12;

struct ChshTerm {
  int label1, label2;
  double sign;
};

constexpr std::array<ChshTerm, 4> kChshTerms{{
    {0, 1, +1.0}, {0, 3, +1.0}, {2, 1, +1.0}, {2, 3, -1.0}}};

/// Expression value with the observable of `zero_label` replaced by the zero
/// operator (projectors collapse to identity/2, correlator terms vanish);
/// zero_label = -1 evaluates the plain expression.
double eval_expression(const FermionState& state, Inequality inequality,
                       std::span<const Direction> labels, int zero_label) {
  const int mode_count = state.mode_count();

  if (inequality == Inequality::Chsh) {
    double acc = 0.0;
    for (const ChshTerm& t : kChshTerms) {
      if (t.label1 == zero_label || t.label2 == zero_label) continue;
      MeasurementContext ctx(2);
      ctx.set(1, labels[static_cast<std::size_t>(t.label1)]);
      ctx.set(2, labels[static_cast<std::size_t>(t.label2)]);
      acc += t.sign * expectation_dense(state, ctx);
    }
    return acc;
  }

  // Hardy: one all-unprimed term, M single-primed terms, one all-primed term.
  double acc = 0.0;
  auto add_term = [&](int primed_mode, int outcome, double sign) {
    OutcomeContext ctx(mode_count);
    double factor = sign;
    for (int j = 1; j <= mode_count; ++j) {
      const bool primed = (primed_mode == -1) || (primed_mode == j);
      const int label = primed ? mode_count + j - 1 : j - 1;
      if (label == zero_label)
        factor *= 0.5;  // zeroed observable: projector -> identity / 2
      else
        ctx.set(j, labels[static_cast<std::size_t>(label)], outcome);
    }
    acc += factor * joint_probability(state, ctx);
  };
  add_term(0, 0, +1.0);
  for (int j = 1; j <= mode_count; ++j) add_term(j, 0, -1.0);
  add_term(-1, 1, -1.0);
  return acc;
}

bool labels_less(std::span<const Direction> a, std::span<const Direction> b) {
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
    if (a[i].theta != b[i].theta) return a[i].theta < b[i].theta;
    if (a[i].phi != b[i].phi) return a[i].phi < b[i].phi;
  }
  return false;
}

}  // namespace

int label_count(Inequality inequality, int mode_count) {
  if (inequality == Inequality::Chsh) {
    if (mode_count != 2) throw DomainError("CHSH optimization needs exactly two modes");
    return 4;
  }
  if (mode_count < 2) throw DomainError("Hardy optimization needs at least two modes");
  return 2 * mode_count;
}

double inequality_value(const FermionState& state, Inequality inequality,
                        std::span<const Direction> labels) {
  if (static_cast<int>(labels.size()) != label_count(inequality, state.mode_count()))
    throw DomainError("label vector has the wrong length");
  return eval_expression(state, inequality, labels, -1);
}

ChshSettings chsh_settings_from_labels(std::span<const Direction> labels) {
  if (labels.size() != 4) throw DomainError("CHSH needs exactly four labels");
  return {labels[0], labels[1], labels[2], labels[3]};
}

std::vector<Direction> labels_from_chsh_settings(const ChshSettings& settings) {
  return {settings.a1, settings.a2, settings.a1_primed, settings.a2_primed};
}

HardySettings hardy_settings_from_labels(std::span<const Direction> labels,
                                         int mode_count) {
  if (static_cast<int>(labels.size()) != 2 * mode_count)
    throw DomainError("Hardy needs 2M labels");
  HardySettings s;
  s.unprimed.assign(labels.begin(), labels.begin() + mode_count);
  s.primed.assign(labels.begin() + mode_count, labels.end());
  return s;
}

std::vector<Direction> labels_from_hardy_settings(const HardySettings& settings) {
  std::vector<Direction> labels = settings.unprimed;
  labels.insert(labels.end(), settings.primed.begin(), settings.primed.end());
  return labels;
}

AscentResult coordinate_ascent(const FermionState& state, Inequality inequality,
                               std::vector<Direction> initial,
                               const OptimizerConfig& config) {
  const int labels_total = label_count(inequality, state.mode_count());
  if (static_cast<int>(initial.size()) != labels_total)
    throw DomainError("initial settings have the wrong length");
  if (config.max_sweeps < 1) throw DomainError("max_sweeps must be at least 1");
  if (config.tolerance <= 0.0) throw DomainError("tolerance must be positive");

  AscentResult result;
  result.labels = std::move(initial);
  result.value = eval_expression(state, inequality, result.labels, -1);

  for (int sweep = 1; sweep <= config.max_sweeps; ++sweep) {
    const double sweep_start = result.value;
    for (int label = 0; label < labels_total; ++label) {
      const double base = eval_expression(state, inequality, result.labels, label);
      const Direction previous = result.labels[static_cast<std::size_t>(label)];
      auto axis_value = [&](Direction d) {
        result.labels[static_cast<std::size_t>(label)] = d;
        return eval_expression(state, inequality, result.labels, -1);
      };
      const double bx = axis_value(direction_x()) - base;
      const double by = axis_value(direction_y()) - base;
      const double bz = axis_value(direction_z()) - base;
      const double bloch_norm = std::sqrt(bx * bx + by * by + bz * bz);

      bool held = false;
      if (bloch_norm < kDegenerateBloch) {
        result.labels[static_cast<std::size_t>(label)] = previous;
        held = true;
      } else {
        result.labels[static_cast<std::size_t>(label)] =
            Direction::from_vector(bx, by, bz);
      }
      result.value = eval_expression(state, inequality, result.labels, -1);
      result.trace.push_back({sweep, label, result.value, held});
    }
    result.sweeps = sweep;
    if (result.value - sweep_start < config.tolerance) {
      result.converged = true;
      break;
    }
  }
  return result;
}

AscentResult optimize_settings(const FermionState& state, Inequality inequality,
                               const OptimizerConfig& config) {
  if (config.restarts < 1) throw DomainError("at least one restart is required");
  const int labels_total = label_count(inequality, state.mode_count());

  AscentResult best;
  bool have_best = false;
  for (int r = 0; r < config.restarts; ++r) {
    Rng rng(config.seed + static_cast<std::uint64_t>(r));
    std::vector<Direction> initial;
    initial.reserve(static_cast<std::size_t>(labels_total));
    for (int i = 0; i < labels_total; ++i) initial.push_back(random_direction(rng));
    AscentResult res = coordinate_ascent(state, inequality, std::move(initial), config);
    if (!have_best || res.value > best.value ||
        (res.value == best.value && labels_less(res.labels, best.labels))) {
      best = std::move(res);
      have_best = true;
    }
  }
  return best;
}

bool certify_local_max(const FermionState& state, Inequality inequality,
                       std::span<const Direction> labels, double epsilon) {
  std::vector<Direction> work(labels.begin(), labels.end());
  const double base = inequality_value(state, inequality, work);
  for (std::size_t l = 0; l < work.size(); ++l) {
    for (int angle = 0; angle < 2; ++angle) {
      for (double sign : {+1.0, -1.0}) {
        std::vector<Direction> perturbed = work;
        if (angle == 0)
          perturbed[l].theta += sign * epsilon;
        else
          perturbed[l].phi += sign * epsilon;
        if (inequality_value(state, inequality, perturbed) > base + 1e-12) return false;
      }
    }
  }
  return true;
}

GridResult grid_search(const FermionState& state, Inequality inequality,
                       int resolution, int refinements) {
  if (resolution < 2) throw DomainError("grid resolution must be at least 2");
  const int mode_count = state.mode_count();
  const int labels_total = label_count(inequality, mode_count);
  // Full theta grid for two modes; symmetric (theta_unprimed, theta_primed)
  // ansatz beyond that.
  const int axes = (mode_count == 2) ? labels_total : 2;

  auto expand = [&](const std::vector<double>& thetas) {
    std::vector<Direction> labels(static_cast<std::size_t>(labels_total));
    if (mode_count == 2) {
      for (int i = 0; i < labels_total; ++i)
        labels[static_cast<std::size_t>(i)] = {thetas[static_cast<std::size_t>(i)], 0.0};
    } else {
      for (int i = 0; i < labels_total; ++i)
        labels[static_cast<std::size_t>(i)] = {
            (i < mode_count) ? thetas[0] : thetas[1], 0.0};
    }
    return labels;
  };

  std::vector<double> centers(static_cast<std::size_t>(axes), std::numbers::pi);
  double span = 2.0 * std::numbers::pi;
  std::vector<double> best_thetas = centers;
  double best_value = -std::numeric_limits<double>::infinity();

  std::vector<int> idx(static_cast<std::size_t>(axes), 0);
  std::vector<double> thetas(static_cast<std::size_t>(axes), 0.0);
  for (int pass = 0; pass <= refinements; ++pass) {
    // The two-axis ansatz is cheap enough to densify the basin-finding pass.
    const int points = (pass == 0 && axes == 2) ? 2 * resolution + 1 : resolution;
    std::fill(idx.begin(), idx.end(), 0);
    while (true) {
      for (int ax = 0; ax < axes; ++ax)
        thetas[static_cast<std::size_t>(ax)] =
            centers[static_cast<std::size_t>(ax)] - 0.5 * span +
            span * (idx[static_cast<std::size_t>(ax)] + 0.5) / points;
      const double value = eval_expression(state, inequality, expand(thetas), -1);
      if (value > best_value) {
        best_value = value;
        best_thetas = thetas;
      }
      int ax = 0;
      while (ax < axes && ++idx[static_cast<std::size_t>(ax)] == points) {
        idx[static_cast<std::size_t>(ax)] = 0;
        ++ax;
      }
      if (ax == axes) break;
    }
    centers = best_thetas;
    span = 3.0 * span / points;
  }
  return {expand(best_thetas), best_value};
}

}  // namespace jwcontext
