#pragma once

#include "jwcontext/correlators.hpp"
#include "jwcontext/fock.hpp"
#include "jwcontext/jw.hpp"
#include "jwcontext/types.hpp"

#include <string>
#include <vector>

namespace jwcontext {

// ---------------------------------------------------------------------------
// Settings and reports
// ---------------------------------------------------------------------------

/// CHSH settings: unprimed pair (n1, n2) and primed pair (n1', n2').
struct ChshSettings {
  Direction a1, a2, a1_primed, a2_primed;
};

/// Hardy settings: M unprimed and M primed directions, mode order.
struct HardySettings {
  std::vector<Direction> unprimed;
  std::vector<Direction> primed;
};

struct LabeledDirection {
  std::string label;
  Direction direction;
};

struct InequalityReport {
  std::string name;  // "chsh" | "hardy" | "pm"
  double quantum_value = 0.0;
  double nc_bound = 0.0;
  double margin = 0.0;  // quantum_value - nc_bound
  std::vector<LabeledDirection> settings;
  std::string state_label;

  bool violated() const { return margin > 0.0; }
};

std::vector<LabeledDirection> chsh_labeled_settings(const ChshSettings& settings,
                                                    char basis = 'k');
std::vector<LabeledDirection> hardy_labeled_settings(const HardySettings& settings,
                                                     char basis = 'k');
std::vector<LabeledDirection> pm_labeled_settings();

// ---------------------------------------------------------------------------
// Quantum values
// ---------------------------------------------------------------------------

/// E(k1,k2) + E(k1,k2') + E(k1',k2) - E(k1',k2'); requires M = 2.
double chsh_value(const FermionState& state, const ChshSettings& settings,
                  int dense_cap = kDefaultDenseCap);
double chsh_value(const DensityState& state, const ChshSettings& settings,
                  int dense_cap = kDefaultDenseCap);

/// Stationary settings for a real one-particle amplitude pair (g1, g2):
/// theta1 = pi, theta2 = arctan(2 g1 g2), theta1' = pi/2, theta2' = -theta2,
/// all phi = 0; the predicted value is 2 sqrt(1 + 4 g1^2 g2^2).
struct ChshOptimum {
  ChshSettings settings;
  double value = 0.0;
};
ChshOptimum chsh_analytic_optimum(double g1, double g2);

/// P(0..0|k) - sum_j P(0..0|k with mode j primed) - P(1..1|k'); requires M >= 2.
double hardy_value(const FermionState& state, const HardySettings& settings,
                   int dense_cap = kDefaultDenseCap);

/// Peres-Mermin square over two modes with the fixed direction grid
/// n1 = n2 = z, n1' = n2' = x, n1'' = n2'' = y: sum of the three row and first
/// two column triple-product expectations minus the third column's.
double pm_square_value(const DensityState& state, int dense_cap = kDefaultDenseCap);

// ---------------------------------------------------------------------------
// Noncontextual bounds (exhaustive deterministic-assignment enumeration)
// ---------------------------------------------------------------------------

double chsh_nchv_bound();              // 16 assignments -> exactly 2
double hardy_nchv_bound(int mode_count);  // 2^(2M) assignments -> exactly 0; M <= 8
double pm_nchv_bound();                // 512 assignments -> exactly 4

/// Dispatch by name: "chsh" | "hardy" | "pm".
double nchv_bound(const std::string& name, int mode_count = 2);

}  // namespace jwcontext
