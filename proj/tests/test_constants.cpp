#include <doctest.h>

#include <cmath>

#include "hk/constants.hpp"
#include "hk/errors.hpp"
#include "hk/report.hpp"

using hk::HKVariety;
using hk::Real;

namespace {

const Real pi = hk::kPi;
const hk::FieldInvariants Q = hk::FieldInvariants::rationals();

// Test-side references computed without the library's Euler-Maclaurin code.
Real zeta3() { return 1.2020569031595942853997L; }
Real zeta5() { return 1.0369277551433699263314L; }
Real zeta9() { return 1.0020083928260822144179L; }
Real catalan() {
  // Alternating series with Euler's acceleration by pairing terms.
  Real s = 0;
  for (long k = 0; k < 2000000; ++k) {
    const Real a = 2 * k + 1;
    s += (k % 2 ? -1 : 1) / (a * a);
  }
  return s;
}

// Gamma(x) for x in (1,3) by the Euler product limit, n large.
Real gamma_product(Real x) {
  Real logg = -std::log(x);
  const long n = 2000000;
  for (long k = 1; k <= n; ++k) logg += x * std::log1p(1.0L / k) - std::log1p(x / k);
  return std::exp(logg);
}

}  // namespace

TEST_SUITE("constants") {
  TEST_CASE("zeta at even integers") {
    CHECK(std::fabs(hk::zeta(2) - pi * pi / 6) < 1e-15L);
    CHECK(std::fabs(hk::zeta(4) - std::pow(pi, 4) / 90) < 1e-15L);
    CHECK(std::fabs(hk::zeta(6) - std::pow(pi, 6) / 945) < 1e-15L);
    CHECK(std::fabs(hk::zeta(3) - zeta3()) < 1e-15L);
    CHECK(std::fabs(hk::zeta(1.0L + 1e-9L) - 1e9L) < 1.0L);
    CHECK_THROWS_AS(hk::zeta(1), hk::DomainError);
  }

  TEST_CASE("gamma") {
    CHECK(std::fabs(hk::gamma_fn(1) - 1) < 1e-16L);
    CHECK(std::fabs(hk::gamma_fn(1.5L) - std::sqrt(pi) / 2) < 1e-16L);
    CHECK(std::fabs(hk::gamma_fn(0.5L) - std::sqrt(pi)) < 1e-16L);
    CHECK(std::fabs(hk::gamma_fn(10) - 362880) < 1e-9L);
    CHECK(std::fabs(hk::gamma_fn(2.25L) - gamma_product(2.25L)) < 1e-5L);
    CHECK(std::fabs(hk::gamma_fn(1.75L) - gamma_product(1.75L)) < 1e-5L);
    CHECK_THROWS_AS(hk::gamma_fn(0), hk::DomainError);
  }

  TEST_CASE("L-function of the character mod 4") {
    CHECK(std::fabs(hk::L_minus4(3) - std::pow(pi, 3) / 32) < 1e-15L);
    CHECK(std::fabs(hk::L_minus4(2) - catalan()) < 1e-12L);
    CHECK(std::fabs(hk::L_minus4(1.0L + 1e-10L) - pi / 4) < 1e-8L);
  }

  TEST_CASE("completed zeta of Q") {
    CHECK(std::fabs(hk::xi_K(2, Q) - pi / 12) < 1e-16L);
    CHECK(std::fabs(hk::xi_K(3, Q) - zeta3() / (4 * pi)) < 1e-16L);
    for (Real s : {2.5L, 4.0L, 7.25L})
      CHECK(std::fabs(2 * hk::xi_K(s, Q) - std::pow(pi, -s / 2) * hk::gamma_fn(s / 2) * hk::zeta(s)) < 1e-16L);
  }

  TEST_CASE("projective height zeta functions") {
    CHECK(hk::zetaP(0, 5, Q) == 1);
    CHECK(hk::zetaP(-1, 5, Q) == 0);
    // Closed forms against the lattice evaluator.
    for (Real s : {3.0L, 4.0L, 5.0L, 6.0L}) CHECK(std::fabs(hk::zetaP_closed_form(1, s) - hk::zetaP_lattice(1, s)) < 1e-12L);
    for (Real s : {4.5L, 5.0L, 6.0L}) CHECK(std::fabs(hk::zetaP_closed_form(3, s) - hk::zetaP_lattice(3, s)) < 1e-12L);
    // Certified direct sums.
    CHECK_THROWS_AS(hk::zetaP_numeric(1, 3, 1e-4L), hk::TooCloseToPole);
    for (Real s : {4.0L, 5.0L, 6.0L}) {
      const auto z = hk::zetaP_numeric(1, s, 1e-4L);
      CHECK(z.tail_bound <= 1e-4L);
      CHECK(std::fabs(z.value - hk::zetaP_closed_form(1, s)) <= z.tail_bound);
    }
    const auto z2 = hk::zetaP_numeric(2, 5, 1e-2L);
    CHECK(std::fabs(z2.value - hk::zetaP_lattice(2, 5)) <= z2.tail_bound);
    CHECK_THROWS_AS(hk::zetaP_numeric(1, 2.001L, 1e-12L), hk::TooCloseToPole);
    CHECK_THROWS_AS(hk::zetaP_numeric(1, 2, 1e-3L), hk::DomainError);
    CHECK(hk::zetaP_numeric(0, 2, 1e-3L).value == 1);
    // Z_{P^1}(6) in closed form: 2 zeta(3) L(3) / zeta(6) = 945 zeta(3) / (16 pi^3).
    CHECK(std::fabs(hk::zetaP_closed_form(1, 6) - 945 * zeta3() / (16 * std::pow(pi, 3))) < 1e-15L);
  }

  TEST_CASE("Schanuel constants") {
    CHECK(std::fabs(hk::schanuel_constant(1, Q).C - 3 / pi) < 1e-16L);
    CHECK(std::fabs(hk::schanuel_constant(2, Q).C - 2 * pi / (3 * zeta3())) < 1e-15L);
    CHECK(std::fabs(hk::schanuel_constant(3, Q).C - 45 / (2 * pi * pi)) < 1e-15L);
    const auto t = hk::schanuel_twisted(1, 2, Q);
    CHECK(t.a_l == 1);
    CHECK_THROWS_AS(hk::schanuel_twisted(1, 0, Q), hk::NotBig);
  }

  TEST_CASE("predictions") {
    auto p = hk::predict(HKVariety(2, 2, {0, 1}), {3, 4}, Q);
    CHECK(std::fabs(p.C - 1 / zeta3()) < 1e-15L);
    CHECK(p.a_l == 1);
    CHECK(p.log_exponent == 1);
    CHECK(p.case_tag == "EqualCase");
    CHECK(p.source == "Thm1.2");
    p = hk::predict(HKVariety(1, 2, {1}), {2, 3}, Q);
    CHECK(std::fabs(p.C - 6 / (pi * pi)) < 1e-15L);
    p = hk::predict(HKVariety(1, 2, {0}), {3, 1}, Q);
    CHECK(p.source == "Thm6.3");
    CHECK(p.case_tag == "MuDominates");
    CHECK(std::fabs(p.C - 3 / pi * hk::zetaP_closed_form(1, 6)) < 1e-15L);
    CHECK_THROWS_AS(hk::predict(HKVariety(1, 2, {1}), {0, 3}, Q), hk::NotBig);
    // Every anticanonical prediction is the double-pole constant.
    for (const auto& x : {HKVariety(1, 2, {3}), HKVariety(2, 3, {1, 2}), HKVariety(3, 2, {0, 0, 4})}) {
      const auto k = hk::anticanonical(x);
      const auto q = hk::predict(x, k, Q);
      CHECK(q.case_tag == "EqualCase");
      const Real expected = 1 / (4.0L * (x.r() + 1) * k.mu * hk::xi_K(x.r() + 1, Q) * hk::xi_K(x.t(), Q));
      CHECK(std::fabs(q.C - expected) < 1e-15L);
    }
  }

  TEST_CASE("region predictions") {
    const HKVariety x(1, 2, {0});
    const auto whole = hk::predict_region(x, {3, 1}, hk::Region::Whole, Q);
    const auto u = hk::predict_region(x, {3, 1}, hk::Region::GoodOpen, Q);
    const auto f = hk::predict_region(x, {3, 1}, hk::Region::SubbundleF, Q);
    CHECK(std::fabs(whole.C - u.C - f.C) < 1e-15L);
    CHECK(std::fabs(f.C - 3 / pi) < 1e-15L);
    // A surface whose subbundle dominates: (1,3) on X_2(1).
    const auto w2 = hk::predict_region(HKVariety(1, 2, {1}), {1, 3}, hk::Region::Whole, Q);
    CHECK(w2.a_l == 2);
    CHECK_THROWS_AS(hk::predict_region(HKVariety(1, 2, {1}), {1, 1}, hk::Region::Whole, Q), hk::NotBig);
  }

  TEST_CASE("constant table of X_2(1)") {
    const auto rows = hk::hirzebruch_table(Q);
    REQUIRE(rows.size() == 9);
    const Real z3 = hk::zetaP_closed_form(1, 3);
    const Real z5 = hk::zetaP_closed_form(1, 5);
    const Real mu = 2 * pi / (3 * zeta3());
    const Real expected[9] = {mu,
                              3 / pi * z3,
                              3 / pi * z5,
                              2835 * zeta5() / (4 * std::pow(pi, 6)),
                              mu,
                              6 / (pi * pi),
                              32 * std::pow(pi, 7) / (165375 * zeta9()),
                              0.977818683639149947L,
                              mu};
    for (int i = 0; i < 9; ++i) {
      CAPTURE(i);
      CHECK(std::fabs(rows[i].prediction.C - expected[i]) < 1e-12L);
    }
  }

  TEST_CASE("threefold table verdicts") {
    const auto rows = hk::threefold_table(Q);
    REQUIRE(rows.size() == 5);
    const bool l_big[5] = {true, true, true, true, false};
    const bool m_big[5] = {true, true, false, false, false};
    const char* dominant[5] = {"U", "U'+F'", "U'", "U", "U"};
    for (int i = 0; i < 5; ++i) {
      CAPTURE(rows[i].case_label);
      CHECK(rows[i].l_big == l_big[i]);
      CHECK(rows[i].m_big == m_big[i]);
      CHECK(rows[i].dominant == dominant[i]);
    }
    const auto& r01 = rows[1];
    CHECK(std::fabs(r01.strata[0].prediction->C - 1 / zeta3()) < 1e-15L);
    CHECK(std::fabs(r01.strata[1].prediction->C - 3 / pi * (hk::zetaP_closed_form(1, 6) - 1)) < 1e-15L);
    CHECK(std::fabs(r01.strata[2].prediction->C - 3 / pi) < 1e-15L);
    CHECK(rows[2].strata[1].prediction->a_l == mpq_class(3, 2));
  }

  TEST_CASE("field invariants files") {
    const auto inv = hk::FieldInvariants::parse(
        "# Gaussian field\nr1=0\nr2=1\nw=4\nabsDisc=4\nregulator=1\nclassNumber=1\nzetaK.2=1.5067030099229\n");
    CHECK(inv.degree() == 2);
    CHECK(inv.w == 4);
    CHECK(std::fabs(inv.zeta_k(2) - 1.5067030099229L) < 1e-15L);
    CHECK_THROWS_AS(inv.zeta_k(3), hk::DomainError);
    CHECK_THROWS_AS(hk::FieldInvariants::parse("r1=1\n"), hk::ParseError);
    CHECK_THROWS_AS(hk::FieldInvariants::parse("r1=x\nr2=0\nw=2\nabsDisc=1\nregulator=1\nclassNumber=1"),
                    hk::ParseError);
    // Q written out as a file reproduces the builtin Schanuel constant.
    const auto q = hk::FieldInvariants::parse("r1=1\nr2=0\nw=2\nabsDisc=1\nregulator=1\nclassNumber=1\nzetaK.2=" +
                                              std::to_string(static_cast<double>(pi * pi / 6)));
    CHECK(std::fabs(hk::schanuel_constant(1, q).C - 3 / pi) < 1e-6L);
  }

  TEST_CASE("prediction JSON round trip") {
    for (const auto& row : hk::hirzebruch_table(Q)) {
      const auto j = hk::to_json(row.prediction);
      const auto back = hk::prediction_from_json(nlohmann::json::parse(j.dump()));
      CHECK(back.a_l == row.prediction.a_l);
      CHECK(back.log_exponent == row.prediction.log_exponent);
      CHECK(static_cast<double>(back.C) == static_cast<double>(row.prediction.C));
      CHECK(back.case_tag == row.prediction.case_tag);
      CHECK(back.source == row.prediction.source);
      CHECK(hk::to_json(back) == j);
    }
    CHECK_THROWS_AS(hk::prediction_from_json(nlohmann::json::parse("{\"aL\":1}")), hk::ParseError);
  }
}
