#pragma once

#include "jwcontext/fock.hpp"
#include "jwcontext/inequalities.hpp"
#include "jwcontext/optimize.hpp"

#include <vector>

namespace jwcontext {

/// Finite-box discretization linking momentum and position modes:
/// x_m = (m-1) L / M' and k_j = 2 pi (j-1) / L for j, m = 1..M'.
struct ModeGrid {
  double length = 1.0;
  int point_count = 2;  // M'

  static ModeGrid uniform(double length, int point_count);

  std::vector<double> positions() const;
  std::vector<double> momenta() const;
};

/// Maps a one-particle momentum state onto position modes,
/// h_m = (1/sqrt(M')) sum_j g_j e^{i k_j x_m}; unitary when the grid is
/// square (momentum coefficients are zero-padded up to M'). Multi-particle
/// input is a domain error.
FermionState momentum_to_position(const FermionState& state, const ModeGrid& grid);

/// Inverse transform (conjugate phases).
FermionState position_to_momentum(const FermionState& state, const ModeGrid& grid);

/// Transforms the state and maximizes the position-basis inequality:
/// CHSH for M' = 2, Hardy otherwise. Phases of the transformed amplitudes are
/// kept verbatim; the optimizer's phi settings absorb them.
InequalityReport position_basis_report(const FermionState& state, const ModeGrid& grid,
                                       const OptimizerConfig& config);

}  // namespace jwcontext
