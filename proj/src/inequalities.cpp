#include "jwcontext/inequalities.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace jwcontext {

namespace {

template <typename StateT>
double chsh_value_impl(const StateT& state, const ChshSettings& settings, int dense_cap) {
  if (state.mode_count() != 2)
    throw DomainError("the CHSH expression is defined for exactly two modes");
  auto term = [&](const Direction& d1, const Direction& d2) {
    MeasurementContext ctx(2);
    ctx.set(1, d1).set(2, d2);
    return expectation_dense(state, ctx, dense_cap);
  };
  return term(settings.a1, settings.a2) + term(settings.a1, settings.a2_primed) +
         term(settings.a1_primed, settings.a2) -
         term(settings.a1_primed, settings.a2_primed);
}

std::string mode_label(char basis, int mode, int primes) {
  std::string s = std::string(1, basis) + std::to_string(mode);
  s.append(static_cast<std::size_t>(primes), '\'');
  return s;
}

}  // namespace

std::vector<LabeledDirection> chsh_labeled_settings(const ChshSettings& settings,
                                                    char basis) {
  return {{mode_label(basis, 1, 0), settings.a1},
          {mode_label(basis, 2, 0), settings.a2},
          {mode_label(basis, 1, 1), settings.a1_primed},
          {mode_label(basis, 2, 1), settings.a2_primed}};
}

std::vector<LabeledDirection> hardy_labeled_settings(const HardySettings& settings,
                                                     char basis) {
  std::vector<LabeledDirection> out;
  for (std::size_t j = 0; j < settings.unprimed.size(); ++j)
    out.push_back({mode_label(basis, static_cast<int>(j) + 1, 0), settings.unprimed[j]});
  for (std::size_t j = 0; j < settings.primed.size(); ++j)
    out.push_back({mode_label(basis, static_cast<int>(j) + 1, 1), settings.primed[j]});
  return out;
}

std::vector<LabeledDirection> pm_labeled_settings() {
  return {{"k1", direction_z()},   {"k2", direction_z()},
          {"k1'", direction_x()},  {"k2'", direction_x()},
          {"k1''", direction_y()}, {"k2''", direction_y()}};
}

// ---------------------------------------------------------------------------
// CHSH
// ---------------------------------------------------------------------------

double chsh_value(const FermionState& state, const ChshSettings& settings,
                  int dense_cap) {
  return chsh_value_impl(state, settings, dense_cap);
}

double chsh_value(const DensityState& state, const ChshSettings& settings,
                  int dense_cap) {
  return chsh_value_impl(state, settings, dense_cap);
}

ChshOptimum chsh_analytic_optimum(double g1, double g2) {
  if (std::abs(g1 * g1 + g2 * g2 - 1.0) > kEqTol)
    throw NormalizationError("amplitudes must satisfy g1^2 + g2^2 = 1");
  const double theta2 = std::atan(2.0 * g1 * g2);
  ChshOptimum opt;
  opt.settings.a1 = {std::numbers::pi, 0.0};
  opt.settings.a2 = {theta2, 0.0};
  opt.settings.a1_primed = {std::numbers::pi / 2, 0.0};
  opt.settings.a2_primed = {-theta2, 0.0};
  opt.value = 2.0 * std::sqrt(1.0 + 4.0 * g1 * g1 * g2 * g2);
  return opt;
}

// ---------------------------------------------------------------------------
// Hardy
// ---------------------------------------------------------------------------

double hardy_value(const FermionState& state, const HardySettings& settings,
                   int dense_cap) {
  const int mode_count = state.mode_count();
  if (mode_count < 2) throw DomainError("the Hardy expression needs at least two modes");
  if (static_cast<int>(settings.unprimed.size()) != mode_count ||
      static_cast<int>(settings.primed.size()) != mode_count)
    throw DomainError("Hardy settings need one unprimed and one primed direction per mode");

  auto probability = [&](int primed_mode, int outcome) {
    // primed_mode == 0: all unprimed; -1: all primed; j: only mode j primed.
    OutcomeContext ctx(mode_count);
    for (int j = 1; j <= mode_count; ++j) {
      const bool primed = (primed_mode == -1) || (primed_mode == j);
      const Direction& d = primed ? settings.primed[static_cast<std::size_t>(j - 1)]
                                  : settings.unprimed[static_cast<std::size_t>(j - 1)];
      ctx.set(j, d, outcome);
    }
    return joint_probability(state, ctx, dense_cap);
  };

  double value = probability(0, 0);
  for (int j = 1; j <= mode_count; ++j) value -= probability(j, 0);
  value -= probability(-1, 1);
  return value;
}

// ---------------------------------------------------------------------------
// Peres-Mermin square
// ---------------------------------------------------------------------------

double pm_square_value(const DensityState& state, int dense_cap) {
  if (state.mode_count() != 2)
    throw DomainError("the Peres-Mermin square is defined for exactly two modes");

  auto sig = [&](int mode, Direction d) {
    return sigma_direction(ObservableSpec{mode, d, ""}, 2, dense_cap);
  };
  const Eigen::MatrixXcd z1 = sig(1, direction_z());
  const Eigen::MatrixXcd z2 = sig(2, direction_z());
  const Eigen::MatrixXcd x1 = sig(1, direction_x());
  const Eigen::MatrixXcd x2 = sig(2, direction_x());
  const Eigen::MatrixXcd y1 = sig(1, direction_y());
  const Eigen::MatrixXcd y2 = sig(2, direction_y());

  // Grid entries; products pair observables on distinct modes, which commute.
  const Eigen::MatrixXcd grid[3][3] = {
      {z1, z2, z1 * z2},
      {x2, x1, x1 * x2},
      {z1 * x2, x1 * z2, y1 * y2},
  };

  const Eigen::MatrixXcd rho = state.to_matrix(dense_cap);
  auto expect = [&](const Eigen::MatrixXcd& op) { return (rho * op).trace().real(); };

  double value = 0.0;
  for (int r = 0; r < 3; ++r) value += expect(grid[r][0] * grid[r][1] * grid[r][2]);
  for (int c = 0; c < 2; ++c) value += expect(grid[0][c] * grid[1][c] * grid[2][c]);
  value -= expect(grid[0][2] * grid[1][2] * grid[2][2]);
  return value;
}

// ---------------------------------------------------------------------------
// Noncontextual bounds
// ---------------------------------------------------------------------------

double chsh_nchv_bound() {
  int best = std::numeric_limits<int>::min();
  for (int m = 0; m < 16; ++m) {
    const int a1 = (m & 1) ? 1 : -1;
    const int a2 = (m & 2) ? 1 : -1;
    const int a1p = (m & 4) ? 1 : -1;
    const int a2p = (m & 8) ? 1 : -1;
    best = std::max(best, a1 * a2 + a1 * a2p + a1p * a2 - a1p * a2p);
  }
  return static_cast<double>(best);
}

double hardy_nchv_bound(int mode_count) {
  if (mode_count < 2) throw DomainError("the Hardy expression needs at least two modes");
  if (mode_count > 8)
    throw CapacityError("Hardy assignment enumeration is limited to 8 modes (2^(2M))");
  const std::uint32_t total = std::uint32_t{1} << (2 * mode_count);
  int best = std::numeric_limits<int>::min();
  for (std::uint32_t a = 0; a < total; ++a) {
    // bits 0..M-1: unprimed outcomes; bits M..2M-1: primed outcomes
    const std::uint32_t unprimed = a & ((1u << mode_count) - 1);
    const std::uint32_t primed = a >> mode_count;
    int value = (unprimed == 0) ? 1 : 0;
    for (int j = 0; j < mode_count; ++j) {
      const bool zeros_elsewhere = (unprimed & ~(1u << j)) == 0;
      const bool primed_zero = ((primed >> j) & 1) == 0;
      if (zeros_elsewhere && primed_zero) value -= 1;
    }
    if (primed == (1u << mode_count) - 1) value -= 1;
    best = std::max(best, value);
  }
  return static_cast<double>(best);
}

double pm_nchv_bound() {
  int best = std::numeric_limits<int>::min();
  for (int m = 0; m < 512; ++m) {
    int o[3][3];
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) o[i][j] = (m & (1 << (3 * i + j))) ? 1 : -1;
    int value = 0;
    for (int r = 0; r < 3; ++r) value += o[r][0] * o[r][1] * o[r][2];
    for (int c = 0; c < 2; ++c) value += o[0][c] * o[1][c] * o[2][c];
    value -= o[0][2] * o[1][2] * o[2][2];
    best = std::max(best, value);
  }
  return static_cast<double>(best);
}

double nchv_bound(const std::string& name, int mode_count) {
  if (name == "chsh") return chsh_nchv_bound();
  if (name == "hardy") return hardy_nchv_bound(mode_count);
  if (name == "pm") return pm_nchv_bound();
  throw DomainError("unknown inequality name: " + name);
}

}  // namespace jwcontext
