#pragma once

#include "jwcontext/types.hpp"

#include <Eigen/Dense>

#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace jwcontext {

// ---------------------------------------------------------------------------
// Occupation patterns
// ---------------------------------------------------------------------------

inline Pattern pattern_bit(int mode) { return Pattern{1} << (mode - 1); }

/// Number of occupied modes (particle number) of a pattern.
int pattern_weight(Pattern p);

/// Number of occupied modes with index strictly below `mode`.
int occupied_below(Pattern p, int mode);

/// "0/1" string, mode 1 leftmost.
std::string pattern_to_string(Pattern p, int mode_count);

/// Inverse of pattern_to_string.
Pattern pattern_from_string(const std::string& bits);

// ---------------------------------------------------------------------------
// Fermionic state vectors
// ---------------------------------------------------------------------------

/// A (sparse) vector over the Fock basis of M ordered fermionic modes.
///
/// Basis kets are the normally ordered products, mode 1 first:
/// |mu> = (a1^dag)^mu_1 (a2^dag)^mu_2 ... (aM^dag)^mu_M |vacuum>.
///
/// The named constructors enforce unit norm and a single particle-number
/// parity sector. raw_vector() skips both checks; it exists for algebraic
/// identities that hold for arbitrary coefficient vectors. Ladder operators
/// return unchecked (possibly unnormalized or zero) vectors.
class FermionState {
 public:
  using AmplitudeMap = std::map<Pattern, cplx>;

  /// One-particle state sum_j g_j a_j^dag |vacuum>; mode count = g.size().
  static FermionState single_particle(std::span<const cplx> g, std::string label = "");

  /// N-particle state from coefficients on strictly increasing mode subsets.
  static FermionState n_particle(int mode_count,
                                 const std::map<std::vector<int>, cplx>& coefficients,
                                 std::string label = "");

  /// Arbitrary amplitudes, checked for unit norm and a single parity sector.
  static FermionState from_amplitudes(int mode_count, AmplitudeMap amplitudes,
                                      std::string label = "");

  /// Unchecked amplitudes (only the mode range is validated).
  static FermionState raw_vector(int mode_count, AmplitudeMap amplitudes,
                                 std::string label = "");

  int mode_count() const { return mode_count_; }
  const AmplitudeMap& amplitudes() const { return amplitudes_; }
  const std::string& label() const { return label_; }

  cplx amplitude(Pattern p) const;
  double norm() const;

  /// <N> for a unit-norm state (sum of |t_mu|^2 * weight(mu)).
  double number_expectation() const;

  /// True when every supported pattern shares one particle-number parity.
  bool single_parity_sector() const;

 private:
  FermionState(int mode_count, AmplitudeMap amplitudes, std::string label)
      : mode_count_(mode_count),
        amplitudes_(std::move(amplitudes)),
        label_(std::move(label)) {}

  int mode_count_ = 1;
  AmplitudeMap amplitudes_;
  std::string label_;
};

/// Uniform one-particle superposition over M modes (generalized W form).
FermionState w_state(int mode_count);

/// Uniform N-particle superposition over all mode subsets (Dicke form).
FermionState dicke_state(int mode_count, int excitations);

/// a_j^dag acting on a state; exclusion maps doubly-created patterns to zero.
FermionState apply_creation(const FermionState& state, int mode);

/// a_j acting on a state (adjoint of apply_creation).
FermionState apply_annihilation(const FermionState& state, int mode);

enum class LadderKind { Creation, Annihilation };

/// Dense 2^M x 2^M matrix of a_j^dag or a_j in the Fock basis.
Eigen::MatrixXcd operator_matrix(int mode, LadderKind kind, int mode_count,
                                 int dense_cap = kDefaultDenseCap);

/// Dense coefficient vector indexed by sum_j mu_j 2^(j-1).
Eigen::VectorXcd to_dense_vector(const FermionState& state,
                                 int dense_cap = kDefaultDenseCap);

/// <a|b> with the first argument conjugated.
cplx inner(const FermionState& a, const FermionState& b);

// ---------------------------------------------------------------------------
// Density states
// ---------------------------------------------------------------------------

/// A mixed state over the Fock space, stored either as a weighted mixture of
/// pure states or as a validated dense matrix.
class DensityState {
 public:
  static DensityState pure(FermionState state);
  static DensityState from_mixture(std::vector<double> weights,
                                   std::vector<FermionState> states);
  static DensityState from_matrix(int mode_count, Eigen::MatrixXcd rho,
                                  double tol = kEqTol);
  static DensityState maximally_mixed(int mode_count,
                                      int dense_cap = kDefaultDenseCap);

  int mode_count() const { return mode_count_; }
  bool is_mixture() const { return !mixture_.empty(); }
  const std::vector<std::pair<double, FermionState>>& mixture() const {
    return mixture_;
  }

  Eigen::MatrixXcd to_matrix(int dense_cap = kDefaultDenseCap) const;

 private:
  DensityState() = default;

  int mode_count_ = 1;
  std::vector<std::pair<double, FermionState>> mixture_;
  Eigen::MatrixXcd matrix_;
};

}  // namespace jwcontext
