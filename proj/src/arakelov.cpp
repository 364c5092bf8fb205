#include "hk/arakelov.hpp"

#include <cmath>

#include "hk/constants.hpp"
#include "hk/errors.hpp"
#include "hk/quadrature.hpp"

namespace hk {

namespace {

// sum_{n >= 1} exp(-q (n^2 - 1)) for q > 0. Terms with q (n^2 - 1) > 60 are
// dropped; since consecutive exponents grow by at least 3q, the dropped tail
// is below e^{-60} / (1 - e^{-3q}) relative to the leading term, i.e. below
// 1e-18 for q >= 0.05 (x <= 2).
Real theta_scaled(Real q) {
  Real sum = 1;
  for (long n = 2;; ++n) {
    const Real e = q * (static_cast<Real>(n) * n - 1);
    if (e > 60) break;
    sum += std::exp(-e);
  }
  return sum;
}

constexpr Real kDirectLimit = 2;

Real phi_direct(Real x) {
  const Real q = kPi * std::exp(-2 * x);
  return 2 * std::exp(-q) * theta_scaled(q);
}

// Upper bound for phi on (-inf, -1]: phi(x) e^{pi e^{-2x}} = 2 theta_scaled(q)
// with q >= pi e^2, so theta_scaled <= 1 + 1e-30.
constexpr Real kBetaFarLeft = 2.0000001L;

// Smallest U >= 1 (step 1/4) such that
//   int_{-inf}^{-U} c e^{-s x} phi(x) dx <= tol,
// using phi(x) <= beta e^{-pi e^{-2x}}. With u = -x the log-integrand
// s u - pi e^{2u} is concave, so the tail is bounded by its value at U over
// the slope 2 pi e^{2U} - s once the slope is positive.
std::pair<Real, Real> truncation_point(Real s, Real c, Real tol) {
  for (Real u = 1;; u += 0.25L) {
    const Real slope = 2 * kPi * std::exp(2 * u) - s;
    if (slope <= 0) continue;
    const Real tail = c * kBetaFarLeft * std::exp(s * u - kPi * std::exp(2 * u)) / slope;
    if (tail <= tol) return {u, tail};
  }
}

IntegralValue integrate_left(const std::function<Real(Real)>& g, Real s, Real c, Real quad_tol) {
  const auto [u, tail] = truncation_point(s, c, quad_tol / 10);
  IntegralValue out;
  Real a = -u;
  for (Real b : {-2.0L, -1.0L, -0.5L, 0.0L}) {
    if (b <= a) continue;
    const QuadResult q = integrate(g, a, b, quad_tol / 4);
    out.value += q.value;
    out.error += q.error;
    a = b;
  }
  out.error += tail;
  return out;
}

}  // namespace

Real phi(Real x) {
  if (x <= kDirectLimit) return phi_direct(x);
  // e^{h0(x)} = e^x e^{h0(-x)}.
  return std::exp(x) * (1 + phi_direct(-x)) - 1;
}

Real h0(Real x) {
  if (x <= kDirectLimit) return std::log1p(phi_direct(x));
  return x + std::log1p(phi_direct(-x));
}

PhiOplus phi_oplus(const std::vector<Real>& scales, Real x) {
  std::vector<Real> phis;
  phis.reserve(scales.size());
  for (Real c : scales) {
    if (!(c > 0)) throw DomainError("lattice scales must be positive");
    // |1| = c e^{-x} = e^{-(x - log c)}.
    phis.push_back(phi(x - std::log(c)));
  }
  PhiOplus out;
  Real prod = 1;
  for (Real p : phis) prod *= 1 + p;
  out.product_form = prod - 1;
  // e_k by the usual one-variable-at-a-time recursion.
  std::vector<Real> e(phis.size() + 1, 0);
  e[0] = 1;
  for (std::size_t i = 0; i < phis.size(); ++i)
    for (std::size_t k = i + 1; k >= 1; --k) e[k] += e[k - 1] * phis[i];
  for (std::size_t k = 1; k < e.size(); ++k) out.symmetric_form += e[k];
  return out;
}

IntegralValue xi_integral(Real s, Real quad_tol) {
  if (!(s > 1)) throw DomainError("xi_integral needs s > 1");
  auto g = [s](Real x) { return (std::exp(-s * x) + std::exp((s - 1) * x)) * phi(x); };
  IntegralValue out = integrate_left(g, s, 2, quad_tol);
  out.value += 1 / (s - 1) - 1 / s;
  return out;
}

IdentityCheck prop5_identity_check(int n, Real s, Real quad_tol) {
  if (n < 1 || n > 3) throw DomainError("prop5_identity_check supports n in {1,2,3}");
  if (!(s > n + 1)) throw DomainError("prop5_identity_check needs s > n + 1");
  IdentityCheck out;
  out.lhs = 2 * xi_K(s, FieldInvariants::rationals()) * zetaP(n, s, FieldInvariants::rationals());
  auto f = [n](Real x) { return std::expm1((n + 1) * std::log1p(phi(x))); };
  auto g = [s, n, &f](Real x) { return (std::exp(-s * x) + std::exp((s - n - 1) * x)) * f(x); };
  // (1+phi)^{n+1} - 1 <= (n+1) phi (1+phi)^n <= 1.01 (n+1) phi on (-inf,-1].
  const IntegralValue integral = integrate_left(g, s, 2 * 1.01L * (n + 1), quad_tol);
  out.rhs = integral.value + 1 / (s - n - 1) - 1 / s;
  out.rhs_error = integral.error;
  out.diff = out.lhs - out.rhs;
  return out;
}

ResidueCheck maruyama_residue_check() {
  ResidueCheck out;
  std::vector<Real> h;
  for (int k = 1; k <= 6; ++k) {
    const Real step = std::pow(10.0L, -k);
    h.push_back(step);
    out.sequence.push_back(step * zetaP_closed_form(1, 2 + step));
  }
  // Neville's scheme evaluated at h = 0.
  std::vector<Real> p = out.sequence;
  for (std::size_t level = 1; level < p.size(); ++level)
    for (std::size_t i = p.size() - 1; i >= level; --i)
      p[i] = (h[i - level] * p[i] - h[i] * p[i - 1]) / (h[i - level] - h[i]);
  out.residue = p.back();
  out.monotone_decreasing = true;
  for (std::size_t i = 1; i < out.sequence.size(); ++i)
    if (!(out.sequence[i] < out.sequence[i - 1])) out.monotone_decreasing = false;
  return out;
}

GeerSchoofCheck geer_schoof_bound_check(const std::vector<Real>& grid) {
  GeerSchoofCheck out;
  out.bounded = true;
  for (Real x : grid) {
    if (x > 0) throw DomainError("Geer-Schoof grid must lie in (-inf, 0]");
    // phi(x) e^{q} computed without forming the underflowing factor e^{-q}.
    const Real scaled = 2 * theta_scaled(kPi * std::exp(-2 * x));
    if (!std::isfinite(scaled)) out.bounded = false;
    out.beta = std::max(out.beta, scaled);
  }
  return out;
}

}  // namespace hk
