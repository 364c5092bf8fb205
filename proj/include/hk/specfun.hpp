#pragma once

// Special functions in long double precision.
//
// Riemann and Hurwitz zeta use Euler-Maclaurin summation with a fixed head of
// N terms and Bernoulli corrections up to B_24; for s >= 1 + 1e-12 and a > 0
// the truncation error is far below 1e-18 relative. Gamma uses a Lanczos sum
// with 17 rational coefficients (g ~ 12.2), accurate to ~1e-19 relative.

namespace hk {

using Real = long double;

inline constexpr Real kPi = 3.141592653589793238462643383279502884L;

// s > 1. Throws DomainError otherwise.
Real zeta(Real s);
// s > 1, a > 0.
Real hurwitz_zeta(Real s, Real a);
// s > 0.
Real gamma_fn(Real s);
// Dirichlet L-function of the character mod 4, s > 1.
Real L_minus4(Real s);

}  // namespace hk
