#pragma once

// Numerical checks of the theta-function side over Q. An Arakelov divisor
// class over Q is determined by its degree x; its space of global sections
// is the lattice Z with |1| = e^{-x}, so
//
//   h0(x)  = log sum_{n in Z} exp(-pi n^2 e^{-2x}),
//   phi(x) = e^{h0(x)} - 1 = 2 sum_{n >= 1} exp(-pi n^2 e^{-2x}).

#include <vector>

#include "hk/specfun.hpp"

namespace hk {

// Direct theta summation for x <= 2, the functional equation
// h0(x) = x + h0(-x) beyond.
Real h0(Real x);
Real phi(Real x);

struct PhiOplus {
  Real product_form = 0;    // prod (1 + phi_i) - 1
  Real symmetric_form = 0;  // e_1 + e_2 + ... + e_n of the phi_i
};

// phi of the orthogonal sum of lattices Z with |1| = c_i e^{-x}.
// Throws DomainError unless every scale is positive.
PhiOplus phi_oplus(const std::vector<Real>& scales, Real x);

struct IntegralValue {
  Real value = 0;
  Real error = 0;  // quadrature estimate plus certified truncation tail
};

// int_{-inf}^0 e^{-sx} phi(x) dx + int_{-inf}^0 e^{(s-1)x} phi(x) dx + 1/(s-1) - 1/s,
// which equals 2 xi_Q(s) for s > 1.
IntegralValue xi_integral(Real s, Real quad_tol = 1e-15L);

struct IdentityCheck {
  Real lhs = 0;
  Real rhs = 0;
  Real diff = 0;
  Real rhs_error = 0;
};

// lhs = 2 xi_Q(s) Z_{P^n}(s); rhs = the two integrals of (1+phi)^{n+1} - 1
// plus 1/(s-n-1) - 1/s. The lhs uses closed forms or the lattice evaluator,
// never the theta functions. Throws DomainError unless n in {1,2,3} and s > n+1.
IdentityCheck prop5_identity_check(int n, Real s, Real quad_tol = 1e-15L);

struct ResidueCheck {
  Real residue = 0;                // extrapolated limit
  std::vector<Real> sequence;      // (s-2) Z_{P^1}(s) at s = 2 + 10^{-k}, k = 1..6
  bool monotone_decreasing = false;
};

ResidueCheck maruyama_residue_check();

struct GeerSchoofCheck {
  bool bounded = false;
  Real beta = 0;  // max over the grid of phi(x) e^{pi e^{-2x}}
};

// Throws DomainError if a grid point is positive.
GeerSchoofCheck geer_schoof_bound_check(const std::vector<Real>& grid);

}  // namespace hk
