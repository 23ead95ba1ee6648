#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>

namespace jwcontext {

using cplx = std::complex<double>;

/// Occupation pattern over ordered modes: bit j-1 holds the occupancy of mode j.
using Pattern = std::uint64_t;

/// Largest mode count for which 2^M dense objects are materialized by default.
inline constexpr int kDefaultDenseCap = 12;

/// Intermediate support cap for the sparse probability path beyond the dense cap.
inline constexpr std::size_t kDefaultSupportCap = std::size_t{1} << 20;

inline constexpr double kEqTol = 1e-10;     // generic equality tolerance
inline constexpr double kExactTol = 1e-12;  // exact-algebra tolerance

/// Input outside an operation's domain (bad mode index, wrong mode count, ...).
struct DomainError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A vector (amplitudes, weights) that must be normalized but is not.
/// No silent rescaling is performed anywhere in the library.
struct NormalizationError : DomainError {
  using DomainError::DomainError;
};

/// Request exceeds a size cap (dense dimension, enumeration or support size).
struct CapacityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace jwcontext
