#pragma once

#include <cstdint>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace hflop {

// Costs and rates are accumulated as integer micro-units (1e-6 resolution)
// so that objective values compare exactly across solvers regardless of
// summation order. Doubles are only a presentation format.
using Micros = std::int64_t;

inline constexpr Micros kMicrosPerUnit = 1'000'000;

// Largest representable magnitude, reserved as an "unbounded" marker in
// solver internals.
inline constexpr Micros kMicrosInf = std::numeric_limits<Micros>::max();

inline Micros to_micros(double value) {
  if (!std::isfinite(value)) {
    throw std::invalid_argument("cannot convert non-finite value to fixed point");
  }
  const double scaled = value * static_cast<double>(kMicrosPerUnit);
  if (std::abs(scaled) > 9.0e18) {
    throw std::invalid_argument("value too large for fixed-point representation");
  }
  return static_cast<Micros>(std::llround(scaled));
}

inline double from_micros(Micros value) {
  return static_cast<double>(value) / static_cast<double>(kMicrosPerUnit);
}

}  // namespace hflop
