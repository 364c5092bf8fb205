#pragma once

// Adaptive Gauss-Kronrod (7-point Gauss, 15-point Kronrod) integration on a
// finite interval. Intervals are bisected until the Kronrod-Gauss difference
// on each piece is below its share of the tolerance.

#include <functional>

#include "hk/specfun.hpp"

namespace hk {

struct QuadResult {
  Real value = 0;
  Real error = 0;  // estimated absolute error
  int evaluations = 0;
};

// Throws QuadratureFailure when the tolerance is not met within max_depth
// bisections of some subinterval.
QuadResult integrate(const std::function<Real(Real)>& f, Real a, Real b, Real abs_tol, int max_depth = 40);

}  // namespace hk
