#include "hk/verify.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "hk/arakelov.hpp"
#include "hk/constants.hpp"
#include "hk/enumerate.hpp"

namespace hk {

namespace {

Check tolerance_check(std::string name, Real observed, Real tolerance, std::string detail = {}) {
  Check c;
  c.name = std::move(name);
  c.observed = static_cast<double>(observed);
  c.tolerance = static_cast<double>(tolerance);
  c.pass = observed <= tolerance;
  c.detail = std::move(detail);
  return c;
}

Check equality_check(std::string name, const mpz_class& a, const mpz_class& b, std::string detail) {
  Check c;
  c.name = std::move(name);
  c.pass = a == b;
  c.observed = c.pass ? 0.0 : std::fabs(mpz_class(a - b).get_d());
  c.tolerance = 0.0;
  c.detail = std::move(detail);
  return c;
}

// Plain theta sum with a generous fixed radius, independent of h0's branches.
Real h0_reference(Real x) {
  const Real q = kPi * std::exp(-2 * x);
  const long radius = static_cast<long>(std::ceil(std::sqrt(70 / q))) + 2;
  Real sum = 1;
  for (long n = radius; n >= 1; --n) sum += 2 * std::exp(-q * static_cast<Real>(n) * n);
  return std::log(sum);
}

std::vector<Check> arakelov_suite() {
  std::vector<Check> out;
  Real worst_fe = 0;
  Real worst_ref = 0;
  for (int i = -500; i <= 500; ++i) {
    const Real x = i / 100.0L;
    worst_fe = std::max(worst_fe, std::fabs(h0(x) - h0(-x) - x));
    worst_ref = std::max(worst_ref, std::fabs(h0(x) - h0_reference(x)));
  }
  out.push_back(tolerance_check("h0 functional equation on [-5,5]", worst_fe, 1e-12L));
  out.push_back(tolerance_check("h0 against plain theta sum on [-5,5]", worst_ref, 1e-12L));
  Real worst_oplus = 0;
  const std::vector<std::vector<Real>> scale_sets = {{1}, {1, 1}, {0.5L, 1, 2}, {0.3L, 0.7L, 1.1L, 1.9L}};
  for (const auto& scales : scale_sets)
    for (Real x = -2; x <= 2; x += 0.25L) {
      const PhiOplus p = phi_oplus(scales, x);
      worst_oplus = std::max(worst_oplus, std::fabs(p.product_form - p.symmetric_form) / (1 + p.product_form));
    }
  out.push_back(tolerance_check("phi_oplus product vs symmetric form", worst_oplus, 1e-12L));
  std::vector<Real> grid;
  for (int i = -100; i <= 0; ++i) grid.push_back(i / 10.0L);
  const GeerSchoofCheck gs = geer_schoof_bound_check(grid);
  Check bounded;
  bounded.name = "Geer-Schoof bound phi(x) e^{pi e^{-2x}} <= beta on [-10,0]";
  bounded.pass = gs.bounded && gs.beta < 3;
  bounded.observed = static_cast<double>(gs.beta);
  bounded.tolerance = 3.0;
  bounded.detail = "observed beta";
  out.push_back(bounded);
  return out;
}

std::vector<Check> integral_suite() {
  std::vector<Check> out;
  const FieldInvariants q = FieldInvariants::rationals();
  for (Real s : {2.0L, 3.0L, 5.0L}) {
    const IntegralValue v = xi_integral(s);
    std::ostringstream name;
    name << "xi integral at s=" << static_cast<double>(s);
    out.push_back(tolerance_check(name.str(), std::fabs(v.value - 2 * xi_K(s, q)), 1e-8L));
  }
  const struct {
    int n;
    Real s;
    Real tol;
  } cases[] = {{1, 4, 1e-6L}, {1, 6, 1e-6L}, {2, 4, 1e-5L}};
  for (const auto& c : cases) {
    const IdentityCheck id = prop5_identity_check(c.n, c.s);
    std::ostringstream name;
    name << "projective zeta integral identity n=" << c.n << " s=" << static_cast<double>(c.s);
    out.push_back(tolerance_check(name.str(), std::fabs(id.diff), c.tol));
  }
  return out;
}

std::vector<Check> residue_suite() {
  const ResidueCheck r = maruyama_residue_check();
  std::vector<Check> out;
  out.push_back(tolerance_check("residue of Z_P1 at s=2 is 6/pi", std::fabs(r.residue - 6 / kPi), 1e-3L));
  Check mono;
  mono.name = "(s-2) Z_P1(s) decreases toward the residue";
  mono.pass = r.monotone_decreasing;
  out.push_back(mono);
  out.push_back(tolerance_check("residue equals 2 x Schanuel constant of P^1",
                                std::fabs(r.residue - 2 * schanuel_constant(1, FieldInvariants::rationals()).C),
                                1e-3L));
  return out;
}

std::vector<Check> partition_suite(int threads) {
  std::vector<Check> out;
  const HKVariety x(2, 2, {0, 1});
  const LineBundleClass k = anticanonical(x);
  for (int b = 1; b <= 30; ++b) {
    CountRequest req{x, k, b, Region::Whole, threads};
    const mpz_class whole = count_hk(req).count;
    req.region = Region::GoodOpen;
    const mpz_class u = count_hk(req).count;
    req.region = Region::SubbundleF;
    const mpz_class f = count_hk(req).count;
    const std::string tag = " B=" + std::to_string(b);
    out.push_back(equality_check("N(X) = N(U) + N(F)" + tag, whole, u + f, x.literal()));
    out.push_back(equality_check("N(F) by reduction = direct" + tag, f, count_hk_direct(x, k, b, FiberMode::FirstZero),
                                 x.literal()));
    out.push_back(
        equality_check("N(X) = direct full count" + tag, whole, count_hk_direct(x, k, b, FiberMode::Any), x.literal()));
  }
  return out;
}

std::vector<Check> oracle_suite() {
  std::vector<Check> out;
  for (int n = 1; n <= 3; ++n) {
    bool all = true;
    double worst = 0;
    for (int b = 1; b <= 50; ++b) {
      const mpz_class e = count_projective(n, b);
      const mpz_class m = count_projective_moebius(n, b);
      if (e != m) {
        all = false;
        worst = std::max(worst, std::fabs(mpz_class(e - m).get_d()));
      }
    }
    Check c;
    c.name = "enumeration = Moebius count on P^" + std::to_string(n) + " for B=1..50";
    c.pass = all;
    c.observed = worst;
    out.push_back(c);
  }
  return out;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"arakelov", "integral", "residue", "partition", "oracle"};
  return names;
}

std::vector<Check> run_suite(const std::string& suite, int threads) {
  if (suite == "arakelov") return arakelov_suite();
  if (suite == "integral") return integral_suite();
  if (suite == "residue") return residue_suite();
  if (suite == "partition") return partition_suite(threads);
  if (suite == "oracle") return oracle_suite();
  throw std::invalid_argument("unknown suite '" + suite + "'");
}

}  // namespace hk
