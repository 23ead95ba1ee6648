#include "jwcontext/jw.hpp"

#include <cmath>
#include <numbers>

namespace jwcontext {

namespace {

void check_dense(int mode_count, int dense_cap) {
  if (mode_count < 1) throw DomainError("mode count must be positive");
  if (mode_count > dense_cap)
    throw CapacityError("mode count " + std::to_string(mode_count) +
                        " exceeds the dense cap " + std::to_string(dense_cap));
}

void check_mode_index(int mode, int mode_count) {
  if (mode < 1 || mode > mode_count) throw DomainError("mode index out of range");
}

/// prod_{m<j} (1 - 2 a_m^dag a_m), assembled from the ladder matrices.
Eigen::MatrixXcd jw_string_matrix(int mode, int mode_count, int dense_cap) {
  const Eigen::Index dim = Eigen::Index{1} << mode_count;
  Eigen::MatrixXcd s = Eigen::MatrixXcd::Identity(dim, dim);
  for (int m = 1; m < mode; ++m) {
    const Eigen::MatrixXcd n = operator_matrix(m, LadderKind::Creation, mode_count, dense_cap) *
                               operator_matrix(m, LadderKind::Annihilation, mode_count, dense_cap);
    s = s * (Eigen::MatrixXcd::Identity(dim, dim) - 2.0 * n);
  }
  return s;
}

}  // namespace

// ---------------------------------------------------------------------------
// Directions and contexts
// ---------------------------------------------------------------------------

std::array<double, 3> Direction::unit_vector() const {
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
          std::cos(theta)};
}

Direction Direction::from_vector(double x, double y, double z) {
  const double r = std::sqrt(x * x + y * y + z * z);
  if (r < 1e-300) throw DomainError("cannot normalize a zero direction vector");
  const double rho = std::hypot(x, y);
  Direction d;
  d.theta = std::atan2(rho, z);
  d.phi = (rho == 0.0) ? 0.0 : std::atan2(y, x);
  return d;
}

Direction direction_x() { return {std::numbers::pi / 2, 0.0}; }
Direction direction_y() { return {std::numbers::pi / 2, std::numbers::pi / 2}; }

MeasurementContext::MeasurementContext(int mode_count) : mode_count_(mode_count) {
  if (mode_count < 1) throw DomainError("mode count must be positive");
  entries_.resize(static_cast<std::size_t>(mode_count));
}

MeasurementContext MeasurementContext::full(std::span<const Direction> directions) {
  MeasurementContext ctx(static_cast<int>(directions.size()));
  for (std::size_t j = 0; j < directions.size(); ++j)
    ctx.set(static_cast<int>(j) + 1, directions[j]);
  return ctx;
}

MeasurementContext& MeasurementContext::set(int mode, Direction direction,
                                            std::string primed_label) {
  check_mode_index(mode, mode_count_);
  auto& slot = entries_[static_cast<std::size_t>(mode - 1)];
  if (slot.has_value())
    throw DomainError("mode already carries an observable in this context");
  slot = ObservableSpec{mode, direction, std::move(primed_label)};
  return *this;
}

const std::optional<ObservableSpec>& MeasurementContext::at(int mode) const {
  check_mode_index(mode, mode_count_);
  return entries_[static_cast<std::size_t>(mode - 1)];
}

int MeasurementContext::assigned_count() const {
  int n = 0;
  for (const auto& e : entries_) n += e.has_value() ? 1 : 0;
  return n;
}

bool MeasurementContext::is_full() const { return assigned_count() == mode_count_; }

// ---------------------------------------------------------------------------
// Dense observables
// ---------------------------------------------------------------------------

Eigen::MatrixXcd sigma_component(int mode, PauliComponent component, int mode_count,
                                 int dense_cap) {
  check_dense(mode_count, dense_cap);
  check_mode_index(mode, mode_count);
  const Eigen::Index dim = Eigen::Index{1} << mode_count;
  switch (component) {
    case PauliComponent::Plus:
      return jw_string_matrix(mode, mode_count, dense_cap) *
             operator_matrix(mode, LadderKind::Creation, mode_count, dense_cap);
    case PauliComponent::Minus:
      return jw_string_matrix(mode, mode_count, dense_cap) *
             operator_matrix(mode, LadderKind::Annihilation, mode_count, dense_cap);
    case PauliComponent::Z:
    default:
      return 2.0 * operator_matrix(mode, LadderKind::Creation, mode_count, dense_cap) *
                 operator_matrix(mode, LadderKind::Annihilation, mode_count, dense_cap) -
             Eigen::MatrixXcd::Identity(dim, dim);
  }
}

Eigen::MatrixXcd sigma_direction(const ObservableSpec& spec, int mode_count,
                                 int dense_cap) {
  check_dense(mode_count, dense_cap);
  check_mode_index(spec.mode, mode_count);
  const Eigen::Index dim = Eigen::Index{1} << mode_count;
  const Eigen::MatrixXcd a =
      operator_matrix(spec.mode, LadderKind::Annihilation, mode_count, dense_cap);
  const Eigen::MatrixXcd adag =
      operator_matrix(spec.mode, LadderKind::Creation, mode_count, dense_cap);
  const cplx eip = std::exp(cplx{0.0, spec.direction.phi});
  const cplx eim = std::exp(cplx{0.0, -spec.direction.phi});
  return jw_string_matrix(spec.mode, mode_count, dense_cap) * (eip * a + eim * adag) *
             std::sin(spec.direction.theta) +
         (2.0 * adag * a - Eigen::MatrixXcd::Identity(dim, dim)) *
             std::cos(spec.direction.theta);
}

Eigen::MatrixXcd eigenprojector(const ObservableSpec& spec, int outcome,
                                int mode_count, int dense_cap) {
  if (outcome != 0 && outcome != 1) throw DomainError("outcome must be 0 or 1");
  const Eigen::Index dim = Eigen::Index{1} << mode_count;
  const double sign = (outcome == 0) ? -1.0 : 1.0;
  return 0.5 * (Eigen::MatrixXcd::Identity(dim, dim) +
                sign * sigma_direction(spec, mode_count, dense_cap));
}

Eigen::Matrix2cd hatted_pauli(const Direction& direction) {
  const double c = std::cos(direction.theta);
  const double s = std::sin(direction.theta);
  Eigen::Matrix2cd m;
  m(0, 0) = cplx{-c, 0.0};
  m(0, 1) = s * std::exp(cplx{0.0, direction.phi});
  m(1, 0) = s * std::exp(cplx{0.0, -direction.phi});
  m(1, 1) = cplx{c, 0.0};
  return m;
}

Eigen::VectorXcd fock_to_qubit(const FermionState& state, int dense_cap) {
  return to_dense_vector(state, dense_cap);
}

void apply_sigma_inplace(Eigen::VectorXcd& psi, int mode, const Direction& direction) {
  const Eigen::Index dim = psi.size();
  const Pattern bit = pattern_bit(mode);
  const double c = std::cos(direction.theta);
  const double s = std::sin(direction.theta);
  // Entering the occupied branch contributes sin(theta) e^{-i phi}; leaving it
  // e^{+i phi}. The JW string parity cancels the ladder anticommutation
  // parity, so the flip terms carry no pattern-dependent sign.
  const cplx into_occupied = s * std::exp(cplx{0.0, -direction.phi});
  const cplx into_empty = s * std::exp(cplx{0.0, direction.phi});
  Eigen::VectorXcd out(dim);
  for (Eigen::Index q = 0; q < dim; ++q) {
    const bool occ = (static_cast<Pattern>(q) & bit) != 0;
    const Eigen::Index partner = static_cast<Eigen::Index>(static_cast<Pattern>(q) ^ bit);
    out[q] = (occ ? c : -c) * psi[q] + (occ ? into_occupied : into_empty) * psi[partner];
  }
  psi.swap(out);
}

void apply_projector_inplace(Eigen::VectorXcd& psi, int mode,
                             const Direction& direction, int outcome) {
  if (outcome != 0 && outcome != 1) throw DomainError("outcome must be 0 or 1");
  Eigen::VectorXcd sig = psi;
  apply_sigma_inplace(sig, mode, direction);
  const double sign = (outcome == 0) ? -1.0 : 1.0;
  psi = 0.5 * (psi + sign * sig);
}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// ---------------------------------------------------------------------------
// Correspondence check
// ---------------------------------------------------------------------------

namespace {

/// sigma_j(n) |phi>, assembled factor by factor from the ladder action:
/// creation/annihilation carry their anticommutation signs and each string
/// factor (1 - 2 a_m^dag a_m) is applied separately, so no sign bookkeeping
/// is cancelled by hand.
Eigen::VectorXcd apply_sigma_from_ladder(const Eigen::VectorXcd& phi, int mode,
                                         const Direction& direction) {
  const Eigen::Index dim = phi.size();
  const Pattern bit = pattern_bit(mode);
  const cplx eip = std::exp(cplx{0.0, direction.phi});
  const cplx eim = std::exp(cplx{0.0, -direction.phi});

  // (e^{i phi} a_j + e^{-i phi} a_j^dag) |phi>
  Eigen::VectorXcd flip = Eigen::VectorXcd::Zero(dim);
  for (Eigen::Index p = 0; p < dim; ++p) {
    const Pattern pat = static_cast<Pattern>(p);
    const double sign = (occupied_below(pat, mode) & 1) ? -1.0 : 1.0;
    if (pat & bit)
      flip[static_cast<Eigen::Index>(pat ^ bit)] += eip * sign * phi[p];
    else
      flip[static_cast<Eigen::Index>(pat | bit)] += eim * sign * phi[p];
  }
  // string factors for m < j
  for (int m = 1; m < mode; ++m) {
    const Pattern mbit = pattern_bit(m);
    for (Eigen::Index p = 0; p < dim; ++p)
      if (static_cast<Pattern>(p) & mbit) flip[p] = -flip[p];
  }

  Eigen::VectorXcd out(dim);
  const double s = std::sin(direction.theta);
  const double c = std::cos(direction.theta);
  for (Eigen::Index p = 0; p < dim; ++p) {
    const double z = (static_cast<Pattern>(p) & bit) ? 1.0 : -1.0;
    out[p] = s * flip[p] + c * z * phi[p];
  }
  return out;
}

}  // namespace

CorrespondenceResult correspondence_check(const FermionState& state,
                                          const MeasurementContext& context,
                                          int dense_cap) {
  const int mode_count = state.mode_count();
  if (context.mode_count() != mode_count)
    throw DomainError("context mode count does not match the state");
  check_dense(mode_count, dense_cap);

  // Fock side: ladder-assembled operators applied right to left.
  const Eigen::VectorXcd psi = to_dense_vector(state, dense_cap);
  Eigen::VectorXcd phi = psi;
  for (int j = mode_count; j >= 1; --j)
    if (const auto& spec = context.at(j))
      phi = apply_sigma_from_ladder(phi, j, spec->direction);
  const double lhs = psi.dot(phi).real();

  // Qubit side: tensor product of hatted blocks, mode 1 on the fast index.
  const Eigen::VectorXcd v = fock_to_qubit(state, dense_cap);
  Eigen::MatrixXcd tensor = Eigen::MatrixXcd::Identity(1, 1);
  for (int j = 1; j <= mode_count; ++j) {
    const auto& spec = context.at(j);
    const Eigen::MatrixXcd block =
        spec ? Eigen::MatrixXcd(hatted_pauli(spec->direction))
             : Eigen::MatrixXcd(Eigen::Matrix2cd::Identity());
    tensor = kron(block, tensor);
  }
  const double rhs = v.dot(tensor * v).real();

  return {lhs, rhs, std::abs(lhs - rhs)};
}

CorrespondenceResult correspondence_check(const FermionState& state,
                                          std::span<const Direction> directions,
                                          int dense_cap) {
  if (static_cast<int>(directions.size()) != state.mode_count())
    throw DomainError("need exactly one direction per mode");
  return correspondence_check(state, MeasurementContext::full(directions), dense_cap);
}

}  // namespace jwcontext
