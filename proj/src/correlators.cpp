#include "jwcontext/correlators.hpp"

#include <cmath>

namespace jwcontext {

namespace {

void check_mode_index(int mode, int mode_count) {
  if (mode < 1 || mode > mode_count) throw DomainError("mode index out of range");
}

void check_pattern_range(Pattern p, int mode_count) {
  if (mode_count < 1 || mode_count > 63) throw DomainError("bad mode count");
  if (p >> mode_count) throw DomainError("pattern exceeds the mode count");
}

double expectation_dense_vector(const Eigen::VectorXcd& psi,
                                const MeasurementContext& context) {
  Eigen::VectorXcd phi = psi;
  for (int j = 1; j <= context.mode_count(); ++j)
    if (const auto& spec = context.at(j))
      apply_sigma_inplace(phi, j, spec->direction);
  return psi.dot(phi).real();
}

/// Tr(rho O) with O supplied as an in-place column action.
template <typename ApplyColumn>
double trace_against(const Eigen::MatrixXcd& rho, ApplyColumn&& apply) {
  const Eigen::Index dim = rho.rows();
  double acc = 0.0;
  Eigen::VectorXcd col(dim);
  for (Eigen::Index k = 0; k < dim; ++k) {
    col.setZero();
    col[k] = cplx{1.0, 0.0};
    apply(col);
    acc += (rho.row(k) * col)(0, 0).real();
  }
  return acc;
}

}  // namespace

// ---------------------------------------------------------------------------
// Dense engine
// ---------------------------------------------------------------------------

double expectation_dense(const FermionState& state, const MeasurementContext& context,
                         int dense_cap) {
  if (context.mode_count() != state.mode_count())
    throw DomainError("context mode count does not match the state");
  return expectation_dense_vector(to_dense_vector(state, dense_cap), context);
}

double expectation_dense(const DensityState& state, const MeasurementContext& context,
                         int dense_cap) {
  if (context.mode_count() != state.mode_count())
    throw DomainError("context mode count does not match the state");
  if (state.is_mixture()) {
    double acc = 0.0;
    for (const auto& [w, psi] : state.mixture())
      acc += w * expectation_dense(psi, context, dense_cap);
    return acc;
  }
  return trace_against(state.to_matrix(dense_cap), [&](Eigen::VectorXcd& col) {
    for (int j = 1; j <= context.mode_count(); ++j)
      if (const auto& spec = context.at(j)) apply_sigma_inplace(col, j, spec->direction);
  });
}

// ---------------------------------------------------------------------------
// Closed-form engine
// ---------------------------------------------------------------------------

int closed_form_eta(Pattern nu, Pattern mu, int mode_count) {
  check_pattern_range(nu, mode_count);
  check_pattern_range(mu, mode_count);
  int eta = 0;
  int nu_suffix = 0;  // sum_{t>s} nu_t while s walks downward
  for (int s = mode_count; s >= 1; --s) {
    const int nus = (nu >> (s - 1)) & 1;
    const int mus = (mu >> (s - 1)) & 1;
    eta += (mus + nus) * nu_suffix;
    nu_suffix += nus;
  }
  return eta;
}

std::vector<int> closed_form_xi(Pattern nu, int mode_count) {
  check_pattern_range(nu, mode_count);
  std::vector<int> xi(static_cast<std::size_t>(mode_count), 0);
  int suffix = 0;
  for (int j = mode_count; j >= 1; --j) {
    xi[static_cast<std::size_t>(j - 1)] = suffix;
    suffix += (nu >> (j - 1)) & 1;
  }
  return xi;
}

ClosedFormElement closed_form_element(Pattern nu, Pattern mu,
                                      std::span<const Direction> directions) {
  const int mode_count = static_cast<int>(directions.size());
  ClosedFormElement elem;
  elem.nu = nu;
  elem.mu = mu;
  elem.eta = closed_form_eta(nu, mu, mode_count);
  elem.xi = closed_form_xi(nu, mode_count);
  elem.tilde_thetas.resize(static_cast<std::size_t>(mode_count));

  cplx value{(elem.eta & 1) ? -1.0 : 1.0, 0.0};
  for (int j = 1; j <= mode_count; ++j) {
    const Direction& d = directions[static_cast<std::size_t>(j - 1)];
    const double tilde =
        (elem.xi[static_cast<std::size_t>(j - 1)] & 1) ? -d.theta : d.theta;
    elem.tilde_thetas[static_cast<std::size_t>(j - 1)] = tilde;
    const int nuj = (nu >> (j - 1)) & 1;
    const int muj = (mu >> (j - 1)) & 1;
    if (muj == 0 && nuj == 0)
      value *= cplx{-std::cos(tilde), 0.0};
    else if (muj == 0 && nuj == 1)
      value *= std::sin(tilde) * std::exp(cplx{0.0, -d.phi});
    else if (muj == 1 && nuj == 0)
      value *= std::sin(tilde) * std::exp(cplx{0.0, d.phi});
    else
      value *= cplx{std::cos(tilde), 0.0};
  }
  elem.value = value;
  return elem;
}

cplx matrix_element_closed_form(Pattern nu, Pattern mu,
                                std::span<const Direction> directions) {
  return closed_form_element(nu, mu, directions).value;
}

double expectation_fast(const FermionState& state,
                        std::span<const Direction> directions) {
  if (static_cast<int>(directions.size()) != state.mode_count())
    throw DomainError("fast path needs a full string (one direction per mode)");
  cplx acc{0.0, 0.0};
  for (const auto& [nu, tn] : state.amplitudes())
    for (const auto& [mu, tm] : state.amplitudes())
      acc += std::conj(tn) * tm * matrix_element_closed_form(nu, mu, directions);
  return acc.real();
}

double expectation_fast(const FermionState& state, const MeasurementContext& context) {
  if (context.mode_count() != state.mode_count())
    throw DomainError("context mode count does not match the state");
  if (!context.is_full())
    throw DomainError("fast path is defined for full strings only; "
                      "partial correlators take the dense engine");
  std::vector<Direction> dirs;
  dirs.reserve(static_cast<std::size_t>(context.mode_count()));
  for (int j = 1; j <= context.mode_count(); ++j) dirs.push_back(context.at(j)->direction);
  return expectation_fast(state, dirs);
}

// ---------------------------------------------------------------------------
// Joint probabilities
// ---------------------------------------------------------------------------

OutcomeContext::OutcomeContext(int mode_count) : mode_count_(mode_count) {
  if (mode_count < 1) throw DomainError("mode count must be positive");
  entries_.resize(static_cast<std::size_t>(mode_count));
}

OutcomeContext& OutcomeContext::set(int mode, Direction direction, int outcome) {
  check_mode_index(mode, mode_count_);
  if (outcome != 0 && outcome != 1) throw DomainError("outcome must be 0 or 1");
  auto& slot = entries_[static_cast<std::size_t>(mode - 1)];
  if (slot.has_value()) throw DomainError("mode already carries an outcome spec");
  slot = OutcomeSpec{direction, outcome};
  return *this;
}

const std::optional<OutcomeSpec>& OutcomeContext::at(int mode) const {
  check_mode_index(mode, mode_count_);
  return entries_[static_cast<std::size_t>(mode - 1)];
}

int OutcomeContext::assigned_count() const {
  int n = 0;
  for (const auto& e : entries_) n += e.has_value() ? 1 : 0;
  return n;
}

bool OutcomeContext::is_full() const { return assigned_count() == mode_count_; }

namespace {

/// Sparse action of the outcome projector on a pattern map.
void apply_projector_sparse(FermionState::AmplitudeMap& amps, int mode,
                            const OutcomeSpec& spec) {
  const Pattern bit = pattern_bit(mode);
  const double sign = (spec.outcome == 0) ? -1.0 : 1.0;
  const double c = std::cos(spec.direction.theta);
  const double s = std::sin(spec.direction.theta);
  const cplx into_occupied = s * std::exp(cplx{0.0, -spec.direction.phi});
  const cplx into_empty = s * std::exp(cplx{0.0, spec.direction.phi});
  FermionState::AmplitudeMap out;
  for (const auto& [p, a] : amps) {
    const bool occ = (p & bit) != 0;
    out[p] += 0.5 * (a + sign * (occ ? c : -c) * a);
    out[p ^ bit] += 0.5 * sign * (occ ? into_empty : into_occupied) * a;
  }
  for (auto it = out.begin(); it != out.end();)
    it = (it->second == cplx{0.0, 0.0}) ? out.erase(it) : std::next(it);
  amps.swap(out);
}

}  // namespace

double joint_probability(const FermionState& state, const OutcomeContext& outcomes,
                         int dense_cap, std::size_t support_cap) {
  if (outcomes.mode_count() != state.mode_count())
    throw DomainError("outcome context mode count does not match the state");
  const int mode_count = state.mode_count();

  if (mode_count <= dense_cap) {
    const Eigen::VectorXcd psi = to_dense_vector(state, dense_cap);
    Eigen::VectorXcd proj = psi;
    for (int j = 1; j <= mode_count; ++j)
      if (const auto& spec = outcomes.at(j))
        apply_projector_inplace(proj, j, spec->direction, spec->outcome);
    return psi.dot(proj).real();
  }

  // Beyond the dense cap: pure-state sparse path, bounded intermediate support.
  FermionState::AmplitudeMap work = state.amplitudes();
  for (int j = 1; j <= mode_count; ++j) {
    if (const auto& spec = outcomes.at(j)) {
      apply_projector_sparse(work, j, *spec);
      if (work.size() > support_cap)
        throw CapacityError("projector application exceeded the support cap");
    }
  }
  cplx acc{0.0, 0.0};
  for (const auto& [p, a] : state.amplitudes()) {
    auto it = work.find(p);
    if (it != work.end()) acc += std::conj(a) * it->second;
  }
  return acc.real();
}

double joint_probability(const DensityState& state, const OutcomeContext& outcomes,
                         int dense_cap) {
  if (outcomes.mode_count() != state.mode_count())
    throw DomainError("outcome context mode count does not match the state");
  if (state.is_mixture()) {
    double acc = 0.0;
    for (const auto& [w, psi] : state.mixture())
      acc += w * joint_probability(psi, outcomes, dense_cap);
    return acc;
  }
  return trace_against(state.to_matrix(dense_cap), [&](Eigen::VectorXcd& col) {
    for (int j = 1; j <= state.mode_count(); ++j)
      if (const auto& spec = outcomes.at(j))
        apply_projector_inplace(col, j, spec->direction, spec->outcome);
  });
}

double joint_probability_from_correlators(const FermionState& state,
                                          const OutcomeContext& outcomes,
                                          int dense_cap) {
  if (outcomes.mode_count() != state.mode_count())
    throw DomainError("outcome context mode count does not match the state");
  if (!outcomes.is_full())
    throw DomainError("projector expansion needs a full outcome assignment");
  const int mode_count = state.mode_count();
  if (mode_count > dense_cap)
    throw CapacityError("projector expansion is limited to the dense cap");

  const Pattern subsets = Pattern{1} << mode_count;
  double acc = 0.0;
  for (Pattern t = 0; t < subsets; ++t) {
    MeasurementContext sub(mode_count);
    double sign = 1.0;
    for (int j = 1; j <= mode_count; ++j) {
      if (!(t & pattern_bit(j))) continue;
      const OutcomeSpec& spec = *outcomes.at(j);
      sub.set(j, spec.direction);
      sign *= (spec.outcome == 0) ? -1.0 : 1.0;
    }
    acc += sign * expectation_dense(state, sub, dense_cap);
  }
  return acc / static_cast<double>(subsets);
}

}  // namespace jwcontext
