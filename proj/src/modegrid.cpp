#include "jwcontext/modegrid.hpp"

#include <cmath>
#include <numbers>

namespace jwcontext {

namespace {

/// One-particle coefficient g_j per momentum/position mode, zero-padded.
std::vector<cplx> one_particle_coefficients(const FermionState& state, int width) {
  if (state.mode_count() > width)
    throw DomainError("state has more modes than the grid provides");
  std::vector<cplx> g(static_cast<std::size_t>(width), cplx{0.0, 0.0});
  for (const auto& [p, a] : state.amplitudes()) {
    if (pattern_weight(p) != 1)
      throw DomainError("the mode transform is a one-particle map");
    int mode = 1;
    while (!(p & pattern_bit(mode))) ++mode;
    g[static_cast<std::size_t>(mode - 1)] = a;
  }
  return g;
}

FermionState one_particle_state(const std::vector<cplx>& g, std::string label) {
  return FermionState::single_particle(g, std::move(label));
}

}  // namespace

ModeGrid ModeGrid::uniform(double length, int point_count) {
  if (length <= 0.0) throw DomainError("box length must be positive");
  if (point_count < 2) throw DomainError("the grid needs at least two points");
  return {length, point_count};
}

std::vector<double> ModeGrid::positions() const {
  std::vector<double> x(static_cast<std::size_t>(point_count));
  for (int m = 1; m <= point_count; ++m)
    x[static_cast<std::size_t>(m - 1)] = (m - 1) * length / point_count;
  return x;
}

std::vector<double> ModeGrid::momenta() const {
  std::vector<double> k(static_cast<std::size_t>(point_count));
  for (int j = 1; j <= point_count; ++j)
    k[static_cast<std::size_t>(j - 1)] = 2.0 * std::numbers::pi * (j - 1) / length;
  return k;
}

FermionState momentum_to_position(const FermionState& state, const ModeGrid& grid) {
  const std::vector<cplx> g = one_particle_coefficients(state, grid.point_count);
  const std::vector<double> k = grid.momenta();
  const std::vector<double> x = grid.positions();
  const double scale = 1.0 / std::sqrt(static_cast<double>(grid.point_count));
  std::vector<cplx> h(static_cast<std::size_t>(grid.point_count), cplx{0.0, 0.0});
  for (int m = 0; m < grid.point_count; ++m)
    for (int j = 0; j < grid.point_count; ++j)
      h[static_cast<std::size_t>(m)] +=
          scale * g[static_cast<std::size_t>(j)] *
          std::exp(cplx{0.0, k[static_cast<std::size_t>(j)] * x[static_cast<std::size_t>(m)]});
  std::string label = state.label().empty() ? "state" : state.label();
  return one_particle_state(h, label + " [position basis]");
}

FermionState position_to_momentum(const FermionState& state, const ModeGrid& grid) {
  const std::vector<cplx> h = one_particle_coefficients(state, grid.point_count);
  const std::vector<double> k = grid.momenta();
  const std::vector<double> x = grid.positions();
  const double scale = 1.0 / std::sqrt(static_cast<double>(grid.point_count));
  std::vector<cplx> g(static_cast<std::size_t>(grid.point_count), cplx{0.0, 0.0});
  for (int j = 0; j < grid.point_count; ++j)
    for (int m = 0; m < grid.point_count; ++m)
      g[static_cast<std::size_t>(j)] +=
          scale * h[static_cast<std::size_t>(m)] *
          std::exp(cplx{0.0, -k[static_cast<std::size_t>(j)] * x[static_cast<std::size_t>(m)]});
  std::string label = state.label().empty() ? "state" : state.label();
  return one_particle_state(g, label + " [momentum basis]");
}

InequalityReport position_basis_report(const FermionState& state, const ModeGrid& grid,
                                       const OptimizerConfig& config) {
  const FermionState position_state = momentum_to_position(state, grid);
  const int modes = grid.point_count;
  const Inequality inequality = (modes == 2) ? Inequality::Chsh : Inequality::Hardy;
  const AscentResult best = optimize_settings(position_state, inequality, config);

  InequalityReport report;
  report.quantum_value = best.value;
  if (modes == 2) {
    report.name = "chsh";
    report.nc_bound = chsh_nchv_bound();
    report.settings = chsh_labeled_settings(chsh_settings_from_labels(best.labels), 'x');
  } else {
    report.name = "hardy";
    // Enumeration certifies the bound up to 8 modes; it is 0 for every M.
    report.nc_bound = (modes <= 8) ? hardy_nchv_bound(modes) : 0.0;
    report.settings =
        hardy_labeled_settings(hardy_settings_from_labels(best.labels, modes), 'x');
  }
  report.margin = report.quantum_value - report.nc_bound;
  report.state_label = position_state.label();
  return report;
}

}  // namespace jwcontext
