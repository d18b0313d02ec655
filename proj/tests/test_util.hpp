#pragma once

#include <cmath>
#include <vector>

#include "acka/qsim.hpp"

namespace acka::testutil {

inline double max_amplitude_difference(const StateVector& a, const StateVector& b) {
  if (a.dim() != b.dim()) return 1.0;
  double worst = 0.0;
  for (std::uint64_t i = 0; i < a.dim(); ++i)
    worst = std::max(worst, std::abs(a.amplitude(i) - b.amplitude(i)));
  return worst;
}

inline bool states_equal(const StateVector& a, const StateVector& b, double tol = 1e-12) {
  return max_amplitude_difference(a, b) <= tol;
}

/// Equality up to a global phase.
inline bool states_equivalent(const StateVector& a, const StateVector& b, double tol = 1e-10) {
  return std::abs(fidelity(a, b) - 1.0) <= tol;
}

}  // namespace acka::testutil
