#include "jwcontext/fock.hpp"

#include <Eigen/Eigenvalues>

#include <bit>
#include <cmath>
#include <utility>

namespace jwcontext {

namespace {

void check_mode_count(int mode_count) {
  if (mode_count < 1) throw DomainError("mode count must be positive");
  if (mode_count > 63) throw DomainError("mode count above 63 is not representable");
}

void check_mode_index(int mode, int mode_count) {
  if (mode < 1 || mode > mode_count) throw DomainError("mode index out of range");
}

void check_dense(int mode_count, int dense_cap) {
  check_mode_count(mode_count);
  if (mode_count > dense_cap)
    throw CapacityError("mode count " + std::to_string(mode_count) +
                        " exceeds the dense cap " + std::to_string(dense_cap));
}

void check_patterns_in_range(int mode_count, const FermionState::AmplitudeMap& amps) {
  const Pattern limit = Pattern{1} << mode_count;
  for (const auto& [p, a] : amps) {
    (void)a;
    if (p >= limit) throw DomainError("occupation pattern exceeds the mode count");
  }
}

void drop_exact_zeros(FermionState::AmplitudeMap& amps) {
  for (auto it = amps.begin(); it != amps.end();)
    it = (it->second == cplx{0.0, 0.0}) ? amps.erase(it) : std::next(it);
}

double squared_norm(const FermionState::AmplitudeMap& amps) {
  double s = 0.0;
  for (const auto& [p, a] : amps) {
    (void)p;
    s += std::norm(a);
  }
  return s;
}

}  // namespace

int pattern_weight(Pattern p) { return std::popcount(p); }

int occupied_below(Pattern p, int mode) {
  return std::popcount(p & (pattern_bit(mode) - 1));
}

std::string pattern_to_string(Pattern p, int mode_count) {
  std::string s(static_cast<std::size_t>(mode_count), '0');
  for (int j = 1; j <= mode_count; ++j)
    if (p & pattern_bit(j)) s[static_cast<std::size_t>(j - 1)] = '1';
  return s;
}

Pattern pattern_from_string(const std::string& bits) {
  if (bits.empty() || bits.size() > 63)
    throw DomainError("occupation string must cover 1..63 modes");
  Pattern p = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1')
      p |= Pattern{1} << i;
    else if (bits[i] != '0')
      throw DomainError("occupation string may contain only '0' and '1'");
  }
  return p;
}

// ---------------------------------------------------------------------------
// FermionState
// ---------------------------------------------------------------------------

FermionState FermionState::raw_vector(int mode_count, AmplitudeMap amplitudes,
                                      std::string label) {
  check_mode_count(mode_count);
  check_patterns_in_range(mode_count, amplitudes);
  drop_exact_zeros(amplitudes);
  return FermionState(mode_count, std::move(amplitudes), std::move(label));
}

FermionState FermionState::from_amplitudes(int mode_count, AmplitudeMap amplitudes,
                                           std::string label) {
  FermionState state = raw_vector(mode_count, std::move(amplitudes), std::move(label));
  if (std::abs(squared_norm(state.amplitudes_) - 1.0) > kEqTol)
    throw NormalizationError("state amplitudes are not normalized");
  if (!state.single_parity_sector())
    throw DomainError("amplitudes mix particle-number parity sectors");
  return state;
}

FermionState FermionState::single_particle(std::span<const cplx> g, std::string label) {
  check_mode_count(static_cast<int>(g.size()));
  double s = 0.0;
  for (const cplx& c : g) s += std::norm(c);
  if (std::abs(s - 1.0) > kEqTol)
    throw NormalizationError("one-particle coefficients are not normalized");
  AmplitudeMap amps;
  for (std::size_t j = 0; j < g.size(); ++j)
    if (g[j] != cplx{0.0, 0.0}) amps[pattern_bit(static_cast<int>(j) + 1)] = g[j];
  return FermionState(static_cast<int>(g.size()), std::move(amps), std::move(label));
}

FermionState FermionState::n_particle(int mode_count,
                                      const std::map<std::vector<int>, cplx>& coefficients,
                                      std::string label) {
  check_mode_count(mode_count);
  if (coefficients.empty()) throw DomainError("n-particle state needs coefficients");
  AmplitudeMap amps;
  int excitations = -1;
  double s = 0.0;
  for (const auto& [subset, g] : coefficients) {
    if (excitations < 0) excitations = static_cast<int>(subset.size());
    if (static_cast<int>(subset.size()) != excitations)
      throw DomainError("mode subsets must all have the same size");
    Pattern p = 0;
    int prev = 0;
    for (int mode : subset) {
      check_mode_index(mode, mode_count);
      if (mode == prev) throw DomainError("repeated mode in a subset (exclusion)");
      if (mode < prev) throw DomainError("mode subsets must be strictly increasing");
      prev = mode;
      p |= pattern_bit(mode);
    }
    if (g != cplx{0.0, 0.0}) amps[p] = g;
    s += std::norm(g);
  }
  if (std::abs(s - 1.0) > kEqTol)
    throw NormalizationError("n-particle coefficients are not normalized");
  return FermionState(mode_count, std::move(amps), std::move(label));
}

cplx FermionState::amplitude(Pattern p) const {
  auto it = amplitudes_.find(p);
  return it == amplitudes_.end() ? cplx{0.0, 0.0} : it->second;
}

double FermionState::norm() const { return std::sqrt(squared_norm(amplitudes_)); }

double FermionState::number_expectation() const {
  double s = 0.0;
  for (const auto& [p, a] : amplitudes_) s += std::norm(a) * pattern_weight(p);
  return s;
}

bool FermionState::single_parity_sector() const {
  int parity = -1;
  for (const auto& [p, a] : amplitudes_) {
    (void)a;
    const int q = pattern_weight(p) & 1;
    if (parity < 0) parity = q;
    if (q != parity) return false;
  }
  return true;
}

FermionState w_state(int mode_count) {
  check_mode_count(mode_count);
  std::vector<cplx> g(static_cast<std::size_t>(mode_count),
                      cplx{1.0 / std::sqrt(static_cast<double>(mode_count)), 0.0});
  return FermionState::single_particle(g, "W(M=" + std::to_string(mode_count) + ")");
}

FermionState dicke_state(int mode_count, int excitations) {
  check_mode_count(mode_count);
  if (excitations < 1 || excitations > mode_count)
    throw DomainError("excitation count must lie in 1..M");
  // Walk all weight-N patterns via Gosper's hack.
  std::vector<Pattern> patterns;
  Pattern c = (Pattern{1} << excitations) - 1;
  const Pattern limit = Pattern{1} << mode_count;
  while (c < limit) {
    patterns.push_back(c);
    const Pattern lo = c & (~c + 1);
    const Pattern lz = c + lo;
    c = lz | (((c ^ lz) / lo) >> 2);
  }
  const double g = 1.0 / std::sqrt(static_cast<double>(patterns.size()));
  FermionState::AmplitudeMap amps;
  for (Pattern p : patterns) amps[p] = cplx{g, 0.0};
  return FermionState::from_amplitudes(
      mode_count, std::move(amps),
      "Dicke(M=" + std::to_string(mode_count) + ",N=" + std::to_string(excitations) + ")");
}

// ---------------------------------------------------------------------------
// Ladder operators
// ---------------------------------------------------------------------------

FermionState apply_creation(const FermionState& state, int mode) {
  check_mode_index(mode, state.mode_count());
  const Pattern bit = pattern_bit(mode);
  FermionState::AmplitudeMap out;
  for (const auto& [p, a] : state.amplitudes()) {
    if (p & bit) continue;  // a^dag^2 = 0
    const double sign = (occupied_below(p, mode) & 1) ? -1.0 : 1.0;
    out[p | bit] += sign * a;
  }
  return FermionState::raw_vector(state.mode_count(), std::move(out));
}

FermionState apply_annihilation(const FermionState& state, int mode) {
  check_mode_index(mode, state.mode_count());
  const Pattern bit = pattern_bit(mode);
  FermionState::AmplitudeMap out;
  for (const auto& [p, a] : state.amplitudes()) {
    if (!(p & bit)) continue;
    const double sign = (occupied_below(p, mode) & 1) ? -1.0 : 1.0;
    out[p ^ bit] += sign * a;
  }
  return FermionState::raw_vector(state.mode_count(), std::move(out));
}

Eigen::MatrixXcd operator_matrix(int mode, LadderKind kind, int mode_count,
                                 int dense_cap) {
  check_dense(mode_count, dense_cap);
  check_mode_index(mode, mode_count);
  const Eigen::Index dim = Eigen::Index{1} << mode_count;
  const Pattern bit = pattern_bit(mode);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (Eigen::Index col = 0; col < dim; ++col) {
    const Pattern p = static_cast<Pattern>(col);
    const bool occ = (p & bit) != 0;
    if (kind == LadderKind::Creation && occ) continue;
    if (kind == LadderKind::Annihilation && !occ) continue;
    const double sign = (occupied_below(p, mode) & 1) ? -1.0 : 1.0;
    m(static_cast<Eigen::Index>(p ^ bit), col) = cplx{sign, 0.0};
  }
  return m;
}

Eigen::VectorXcd to_dense_vector(const FermionState& state, int dense_cap) {
  check_dense(state.mode_count(), dense_cap);
  const Eigen::Index dim = Eigen::Index{1} << state.mode_count();
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
  for (const auto& [p, a] : state.amplitudes()) v[static_cast<Eigen::Index>(p)] = a;
  return v;
}

cplx inner(const FermionState& a, const FermionState& b) {
  if (a.mode_count() != b.mode_count())
    throw DomainError("inner product requires matching mode counts");
  cplx s{0.0, 0.0};
  for (const auto& [p, av] : a.amplitudes()) {
    auto it = b.amplitudes().find(p);
    if (it != b.amplitudes().end()) s += std::conj(av) * it->second;
  }
  return s;
}

// ---------------------------------------------------------------------------
// DensityState
// ---------------------------------------------------------------------------

DensityState DensityState::pure(FermionState state) {
  DensityState d;
  d.mode_count_ = state.mode_count();
  d.mixture_.emplace_back(1.0, std::move(state));
  return d;
}

DensityState DensityState::from_mixture(std::vector<double> weights,
                                        std::vector<FermionState> states) {
  if (weights.empty() || weights.size() != states.size())
    throw DomainError("mixture needs matching nonempty weights and states");
  const int mode_count = states.front().mode_count();
  double total = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] < 0.0) throw DomainError("mixture weights must be nonnegative");
    if (states[i].mode_count() != mode_count)
      throw DomainError("mixture states must share one mode count");
    if (std::abs(states[i].norm() - 1.0) > kEqTol)
      throw NormalizationError("mixture component is not normalized");
    total += weights[i];
  }
  if (std::abs(total - 1.0) > kEqTol)
    throw NormalizationError("mixture weights do not sum to 1");
  DensityState d;
  d.mode_count_ = mode_count;
  for (std::size_t i = 0; i < weights.size(); ++i)
    d.mixture_.emplace_back(weights[i], std::move(states[i]));
  return d;
}

DensityState DensityState::from_matrix(int mode_count, Eigen::MatrixXcd rho,
                                       double tol) {
  check_mode_count(mode_count);
  const Eigen::Index dim = Eigen::Index{1} << mode_count;
  if (rho.rows() != dim || rho.cols() != dim)
    throw DomainError("density matrix dimension does not match the mode count");
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > tol)
    throw DomainError("density matrix is not Hermitian");
  if (std::abs(rho.trace().real() - 1.0) > tol || std::abs(rho.trace().imag()) > tol)
    throw NormalizationError("density matrix trace is not 1");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -tol)
    throw DomainError("density matrix has a negative eigenvalue");
  DensityState d;
  d.mode_count_ = mode_count;
  d.matrix_ = std::move(rho);
  return d;
}

DensityState DensityState::maximally_mixed(int mode_count, int dense_cap) {
  check_dense(mode_count, dense_cap);
  const Eigen::Index dim = Eigen::Index{1} << mode_count;
  DensityState d;
  d.mode_count_ = mode_count;
  d.matrix_ = Eigen::MatrixXcd::Identity(dim, dim) / static_cast<double>(dim);
  return d;
}

Eigen::MatrixXcd DensityState::to_matrix(int dense_cap) const {
  check_dense(mode_count_, dense_cap);
  if (!is_mixture()) return matrix_;
  const Eigen::Index dim = Eigen::Index{1} << mode_count_;
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& [w, psi] : mixture_) {
    const Eigen::VectorXcd v = to_dense_vector(psi, dense_cap);
    rho += w * (v * v.adjoint());
  }
  return rho;
}

}  // namespace jwcontext
