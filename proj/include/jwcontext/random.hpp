#pragma once

#include "jwcontext/fock.hpp"
#include "jwcontext/jw.hpp"

#include <random>

namespace jwcontext {

using Rng = std::mt19937_64;

/// Direction uniform on the unit sphere.
Direction random_direction(Rng& rng);

/// Unit-norm vector with full support and arbitrary (mixed) parity.
FermionState random_raw_vector(Rng& rng, int mode_count);

/// Unit-norm state supported on one random parity sector.
FermionState random_physical_state(Rng& rng, int mode_count);

/// Unit-norm vector supported on `support` random distinct patterns.
FermionState random_sparse_state(Rng& rng, int mode_count, int support);

/// Random mixture of 1..max_components physical pure states.
DensityState random_density_state(Rng& rng, int mode_count, int max_components = 4);

}  // namespace jwcontext
