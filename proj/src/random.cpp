#include "jwcontext/random.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

namespace jwcontext {

namespace {

FermionState normalized_from(int mode_count, FermionState::AmplitudeMap amps) {
  double s = 0.0;
  for (const auto& [p, a] : amps) {
    (void)p;
    s += std::norm(a);
  }
  const double inv = 1.0 / std::sqrt(s);
  for (auto& [p, a] : amps) {
    (void)p;
    a *= inv;
  }
  return FermionState::raw_vector(mode_count, std::move(amps));
}

cplx random_amplitude(Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  return {n(rng), n(rng)};
}

}  // namespace

Direction random_direction(Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double z = 2.0 * u(rng) - 1.0;
  return {std::acos(std::clamp(z, -1.0, 1.0)), 2.0 * std::numbers::pi * u(rng)};
}

FermionState random_raw_vector(Rng& rng, int mode_count) {
  FermionState::AmplitudeMap amps;
  const Pattern dim = Pattern{1} << mode_count;
  for (Pattern p = 0; p < dim; ++p) amps[p] = random_amplitude(rng);
  return normalized_from(mode_count, std::move(amps));
}

FermionState random_physical_state(Rng& rng, int mode_count) {
  const Pattern dim = Pattern{1} << mode_count;
  const int parity = (mode_count == 1) ? 1 : static_cast<int>(rng() & 1);
  FermionState::AmplitudeMap amps;
  for (Pattern p = 0; p < dim; ++p)
    if ((pattern_weight(p) & 1) == parity) amps[p] = random_amplitude(rng);
  return normalized_from(mode_count, std::move(amps));
}

FermionState random_sparse_state(Rng& rng, int mode_count, int support) {
  const Pattern dim = Pattern{1} << mode_count;
  if (support < 1 || static_cast<Pattern>(support) > dim)
    throw DomainError("support size out of range");
  std::set<Pattern> chosen;
  std::uniform_int_distribution<Pattern> pick(0, dim - 1);
  while (static_cast<int>(chosen.size()) < support) chosen.insert(pick(rng));
  FermionState::AmplitudeMap amps;
  for (Pattern p : chosen) amps[p] = random_amplitude(rng);
  return normalized_from(mode_count, std::move(amps));
}

DensityState random_density_state(Rng& rng, int mode_count, int max_components) {
  if (max_components < 1) throw DomainError("need at least one mixture component");
  std::uniform_int_distribution<int> count(1, max_components);
  std::uniform_real_distribution<double> u(0.1, 1.0);
  const int r = count(rng);
  std::vector<double> weights(static_cast<std::size_t>(r));
  std::vector<FermionState> states;
  double total = 0.0;
  for (int i = 0; i < r; ++i) {
    weights[static_cast<std::size_t>(i)] = u(rng);
    total += weights[static_cast<std::size_t>(i)];
    states.push_back(random_physical_state(rng, mode_count));
  }
  for (double& w : weights) w /= total;
  return DensityState::from_mixture(std::move(weights), std::move(states));
}

}  // namespace jwcontext
