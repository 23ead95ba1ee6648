#pragma once

#include "jwcontext/fock.hpp"
#include "jwcontext/inequalities.hpp"
#include "jwcontext/jw.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace jwcontext {

enum class Inequality { Chsh, Hardy };

struct OptimizerConfig {
  int restarts = 16;
  int max_sweeps = 200;
  double tolerance = 1e-10;   // convergence threshold on per-sweep improvement
  std::uint64_t seed = 42;
  int grid_resolution = 12;   // coarse-grid steps per angle for the grid oracle
};

struct TraceRow {
  int sweep = 0;
  int label = 0;
  double value = 0.0;
  bool held = false;  // degenerate update (|B| below threshold), direction kept
};

struct AscentResult {
  std::vector<Direction> labels;
  double value = 0.0;
  std::vector<TraceRow> trace;
  int sweeps = 0;
  bool converged = false;
};

/// Number of measurement labels: 4 for CHSH, 2M for Hardy.
int label_count(Inequality inequality, int mode_count);

/// Label-vector evaluator. CHSH order: [n1, n2, n1', n2']; Hardy order:
/// [k1..kM, k1'..kM'].
double inequality_value(const FermionState& state, Inequality inequality,
                        std::span<const Direction> labels);

ChshSettings chsh_settings_from_labels(std::span<const Direction> labels);
std::vector<Direction> labels_from_chsh_settings(const ChshSettings& settings);
HardySettings hardy_settings_from_labels(std::span<const Direction> labels,
                                         int mode_count);
std::vector<Direction> labels_from_hardy_settings(const HardySettings& settings);

/// Blockwise exact ascent: per label, the expression is affine in that
/// label's observable, so three axis evaluations plus one zeroed evaluation
/// give the Bloch coefficient vector B and the update n = B / |B|. Values are
/// nondecreasing along the trace; |B| < 1e-12 keeps the previous direction.
AscentResult coordinate_ascent(const FermionState& state, Inequality inequality,
                               std::vector<Direction> initial,
                               const OptimizerConfig& config);

/// Multi-start wrapper; restart r draws its initial settings from seed + r.
/// Best value wins, ties broken by lexicographically smallest settings.
AscentResult optimize_settings(const FermionState& state, Inequality inequality,
                               const OptimizerConfig& config);

/// True iff the value at `labels` is not exceeded by any single-angle
/// perturbation of +-epsilon (theta and phi of every label).
bool certify_local_max(const FermionState& state, Inequality inequality,
                       std::span<const Direction> labels, double epsilon);

struct GridResult {
  std::vector<Direction> labels;
  double value = 0.0;
};

/// Independent coarse-grid oracle with iterative zoom, phi = 0 throughout.
/// M = 2 scans all labels' thetas; M >= 3 uses the symmetric ansatz (one
/// theta shared by the unprimed labels, one by the primed).
GridResult grid_search(const FermionState& state, Inequality inequality,
                       int resolution, int refinements = 6);

}  // namespace jwcontext
