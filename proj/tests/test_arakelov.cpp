#include <doctest.h>

#include <cmath>

#include "hk/arakelov.hpp"
#include "hk/constants.hpp"
#include "hk/errors.hpp"
#include "hk/quadrature.hpp"

using hk::Real;

namespace {

const Real pi = hk::kPi;

Real direct_theta(Real x) {
  Real s = 0;
  for (long n = -80; n <= 80; ++n) s += std::exp(-pi * n * n * std::exp(-2 * x));
  return s;
}

}  // namespace

TEST_SUITE("arakelov") {
  TEST_CASE("quadrature") {
    auto r = hk::integrate([](Real x) { return std::exp(x); }, 0, 1, 1e-16L);
    CHECK(std::fabs(r.value - (std::exp(1.0L) - 1)) < 1e-16L);
    r = hk::integrate([](Real x) { return 1 / (1 + x * x); }, 0, 1, 1e-16L);
    CHECK(std::fabs(r.value - pi / 4) < 1e-16L);
    r = hk::integrate([](Real x) { return x * x; }, 2, 0, 1e-14L);
    CHECK(std::fabs(r.value + 8.0L / 3) < 1e-15L);
    CHECK_THROWS_AS(hk::integrate([](Real x) { return 1 / x; }, -1, 1, 1e-12L, 8), hk::QuadratureFailure);
  }

  TEST_CASE("theta section counts") {
    const Real h00 = std::log(std::pow(pi, 0.25L) / hk::gamma_fn(0.75L));
    CHECK(std::fabs(hk::h0(0) - h00) < 1e-15L);
    CHECK(std::fabs(hk::h0(0) - std::log(direct_theta(0))) < 1e-15L);
    CHECK(std::fabs(hk::phi(0) - (std::pow(pi, 0.25L) / hk::gamma_fn(0.75L) - 1)) < 1e-15L);
    CHECK(hk::h0(-30) == 0);
    CHECK(hk::phi(-30) == 0);
    CHECK(hk::phi(-3) < 1e-100L);
    for (Real x = -5; x <= 5; x += 0.01L) CHECK(std::fabs(hk::h0(x) - hk::h0(-x) - x) <= 1e-12L);
    for (Real x = -1; x <= 1.5L; x += 0.25L) CHECK(std::fabs(hk::h0(x) - std::log(direct_theta(x))) < 1e-13L);
  }

  TEST_CASE("direct sums of lattices") {
    auto p = hk::phi_oplus({1}, 0.3L);
    CHECK(std::fabs(p.product_form - hk::phi(0.3L)) < 1e-18L);
    p = hk::phi_oplus({1, 1}, 0);
    CHECK(std::fabs(p.product_form - (std::pow(1 + hk::phi(0), 2) - 1)) < 1e-17L);
    p = hk::phi_oplus({0.5L, 1.0L, 2.0L}, 0.7L);
    const Real a = hk::phi(0.7L - std::log(0.5L)), b = hk::phi(0.7L), c = hk::phi(0.7L - std::log(2.0L));
    const Real sigma = (a + b + c) + (a * b + a * c + b * c) + a * b * c;
    CHECK(std::fabs(p.symmetric_form - sigma) < 1e-15L);
    CHECK(std::fabs(p.product_form - p.symmetric_form) < 1e-15L);
    CHECK_THROWS_AS(hk::phi_oplus({1, 0}, 0), hk::DomainError);
  }

  TEST_CASE("integral representation of xi") {
    const auto q = hk::FieldInvariants::rationals();
    for (Real s : {2.0L, 3.0L, 5.0L, 1.5L, 8.0L}) {
      const auto v = hk::xi_integral(s);
      CHECK(std::fabs(v.value - 2 * hk::xi_K(s, q)) < 1e-12L);
    }
    const Real s = 50;
    const auto v = hk::xi_integral(s);
    CHECK(v.value > 1 / (s - 1) - 1 / s);
    // 2 xi(s) grows like Gamma(s/2), so the integrals dominate for large s.
    CHECK(std::fabs(v.value / (2 * hk::xi_K(s, q)) - 1) < 1e-12L);
  }

  TEST_CASE("projective zeta integral identity") {
    auto c = hk::prop5_identity_check(1, 4);
    CHECK(std::fabs(c.diff) < 1e-6L);
    c = hk::prop5_identity_check(1, 6);
    CHECK(std::fabs(c.diff) < 1e-6L);
    c = hk::prop5_identity_check(2, 4);
    CHECK(std::fabs(c.diff) < 1e-5L);
    c = hk::prop5_identity_check(3, 5.5L);
    CHECK(std::fabs(c.diff) < 1e-10L);
    CHECK_THROWS_AS(hk::prop5_identity_check(1, 2), hk::DomainError);
  }

  TEST_CASE("residue at the first pole") {
    const auto r = hk::maruyama_residue_check();
    CHECK(std::fabs(r.residue - 6 / pi) < 1e-3L);
    CHECK(r.sequence.size() == 6);
    CHECK(r.monotone_decreasing);
    CHECK(std::fabs(r.residue - 2 * hk::schanuel_constant(1, hk::FieldInvariants::rationals()).C) < 1e-3L);
  }

  TEST_CASE("Geer-Schoof decay") {
    auto g = hk::geer_schoof_bound_check({0});
    CHECK(g.bounded);
    CHECK(std::isfinite(static_cast<double>(g.beta)));
    std::vector<Real> grid;
    for (int i = -50; i <= 0; ++i) grid.push_back(i / 10.0L);
    g = hk::geer_schoof_bound_check(grid);
    CHECK(g.bounded);
    CHECK(g.beta < 2.001L);
    g = hk::geer_schoof_bound_check({-10});
    CHECK(g.bounded);
    CHECK(hk::phi(-10) == 0);
    CHECK_THROWS_AS(hk::geer_schoof_bound_check({0.5L}), hk::DomainError);
  }
}
