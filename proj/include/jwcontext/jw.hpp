#pragma once

#include "jwcontext/fock.hpp"
#include "jwcontext/types.hpp"

#include <Eigen/Dense>

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace jwcontext {

// ---------------------------------------------------------------------------
// Measurement directions and contexts
// ---------------------------------------------------------------------------

/// A measurement direction n = (sin t cos p, sin t sin p, cos t), stored as angles.
struct Direction {
  double theta = 0.0;
  double phi = 0.0;

  std::array<double, 3> unit_vector() const;
  static Direction from_vector(double x, double y, double z);
};

inline Direction direction_z() { return {0.0, 0.0}; }
Direction direction_x();
Direction direction_y();

/// One dichotomic observable: a mode index, a direction and an optional tag
/// distinguishing primed settings on the same mode.
struct ObservableSpec {
  int mode = 1;
  Direction direction;
  std::string primed_label;
};

/// A joint measurement: at most one observable per mode, identity elsewhere.
/// Observables on distinct modes commute, so any assignment is jointly
/// measurable.
class MeasurementContext {
 public:
  explicit MeasurementContext(int mode_count);

  /// Full context assigning directions to modes 1..M in order.
  static MeasurementContext full(std::span<const Direction> directions);

  MeasurementContext& set(int mode, Direction direction, std::string primed_label = "");
  const std::optional<ObservableSpec>& at(int mode) const;

  int mode_count() const { return mode_count_; }
  int assigned_count() const;
  bool is_full() const;

 private:
  int mode_count_ = 1;
  std::vector<std::optional<ObservableSpec>> entries_;
};

// ---------------------------------------------------------------------------
// Jordan-Wigner observables (dense, assembled from the ladder algebra)
// ---------------------------------------------------------------------------

enum class PauliComponent { Plus, Minus, Z };

/// sigma^+_j = [prod_{m<j} (1 - 2 a_m^dag a_m)] a_j^dag, sigma^-_j its adjoint,
/// sigma^z_j = 2 a_j^dag a_j - 1. The string product starts at m = 1.
Eigen::MatrixXcd sigma_component(int mode, PauliComponent component, int mode_count,
                                 int dense_cap = kDefaultDenseCap);

/// Directional observable
/// sigma_j(n) = [prod_{m<j} (1 - 2 a_m^dag a_m)]
///              (e^{i phi} a_j + e^{-i phi} a_j^dag) sin theta
///              + (2 a_j^dag a_j - 1) cos theta.
/// Hermitian, involutory, eigenvalues exactly +-1.
Eigen::MatrixXcd sigma_direction(const ObservableSpec& spec, int mode_count,
                                 int dense_cap = kDefaultDenseCap);

/// Eigenprojector with outcome 0 on the eigenvalue -1 branch:
/// P(outcome) = [1 + (-1)^(outcome+1) sigma] / 2.
Eigen::MatrixXcd eigenprojector(const ObservableSpec& spec, int outcome,
                                int mode_count, int dense_cap = kDefaultDenseCap);

/// Single-qubit image of sigma_j(n): rows/columns ordered (empty, occupied),
/// so the (1,1) entry is -cos theta.
Eigen::Matrix2cd hatted_pauli(const Direction& direction);

/// Coefficient-preserving map onto the M-qubit computational basis.
Eigen::VectorXcd fock_to_qubit(const FermionState& state,
                               int dense_cap = kDefaultDenseCap);

/// In-place action of sigma_j(n) on a dense coefficient vector. The JW string
/// parity equals the ladder anticommutation parity, so no sign survives on
/// the occupancy-flipping term; unit tests pin this against sigma_direction.
void apply_sigma_inplace(Eigen::VectorXcd& psi, int mode, const Direction& direction);

/// In-place action of the outcome eigenprojector on a dense vector.
void apply_projector_inplace(Eigen::VectorXcd& psi, int mode,
                             const Direction& direction, int outcome);

/// kron(a, b) with b on the fast index.
Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

// ---------------------------------------------------------------------------
// Fock <-> multiqubit correspondence
// ---------------------------------------------------------------------------

struct CorrespondenceResult {
  double lhs = 0.0;  // Fock-side expectation, materialized operators
  double rhs = 0.0;  // tensor product of 2x2 blocks on the qubit image
  double abs_diff = 0.0;
};

/// Compares < psi_F | prod_j sigma_j | psi_F > against the qubit-side tensor
/// expectation. Unassigned modes carry the identity on both sides (partial
/// correlators). Valid for arbitrary coefficient vectors.
CorrespondenceResult correspondence_check(const FermionState& state,
                                          const MeasurementContext& context,
                                          int dense_cap = kDefaultDenseCap);

/// Full-string overload, one direction per mode.
CorrespondenceResult correspondence_check(const FermionState& state,
                                          std::span<const Direction> directions,
                                          int dense_cap = kDefaultDenseCap);

}  // namespace jwcontext
