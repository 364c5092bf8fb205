#include "hk/heights.hpp"

#include <sstream>

#include "hk/errors.hpp"

namespace hk {

ProjectivePoint ProjectivePoint::from_integers(std::span<const mpz_class> v) {
  mpz_class g = 0;
  for (const auto& c : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  if (g == 0) throw AllZero("projective point with all coordinates zero");
  ProjectivePoint p;
  p.coords_.reserve(v.size());
  int sign = 0;
  for (const auto& c : v) {
    if (sign == 0 && c != 0) sign = sgn(c);
    p.coords_.push_back(c / g);
  }
  if (sign < 0)
    for (auto& c : p.coords_) c = -c;
  return p;
}

ProjectivePoint ProjectivePoint::from_integers(std::initializer_list<long> v) {
  std::vector<mpz_class> z(v.begin(), v.end());
  return from_integers(std::span<const mpz_class>(z));
}

ProjectivePoint ProjectivePoint::from_rationals(std::span<const mpq_class> v) {
  mpz_class l = 1;
  for (const auto& c : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  std::vector<mpz_class> z;
  z.reserve(v.size());
  for (const auto& c : v) z.push_back(c.get_num() * (l / c.get_den()));
  return from_integers(std::span<const mpz_class>(z));
}

std::string ProjectivePoint::literal() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < coords_.size(); ++i) os << (i ? ":" : "") << coords_[i];
  os << "]";
  return os.str();
}

std::string to_string(Region r) {
  switch (r) {
    case Region::GoodOpen: return "u";
    case Region::SubbundleF: return "f";
    case Region::Whole: return "x";
  }
  return "?";
}

mpz_class base_height_sq(const ProjectivePoint& q) {
  mpz_class s = 0;
  for (const auto& c : q.coords()) s += c * c;
  return s;
}

namespace {

mpz_class pow_z(const mpz_class& base, unsigned long e) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

mpq_class pow_q(const mpq_class& base, long e) {
  mpz_class num = pow_z(base.get_num(), static_cast<unsigned long>(e < 0 ? -e : e));
  mpz_class den = pow_z(base.get_den(), static_cast<unsigned long>(e < 0 ? -e : e));
  mpq_class r = e < 0 ? mpq_class(den, num) : mpq_class(num, den);
  r.canonicalize();
  return r;
}

mpz_class weighted_fiber_sum(const HKVariety& x, const mpz_class& nq, const ProjectivePoint& y) {
  const auto b = x.fiber_weights();
  const int b_max = x.a_max();
  mpz_class s = 0;
  for (std::size_t i = 0; i < b.size(); ++i) s += y[i] * y[i] * pow_z(nq, b_max - b[i]);
  return s;
}

void check_dims(const HKVariety& x, const ProjectivePoint& q, const ProjectivePoint& y) {
  if (static_cast<int>(q.size()) != x.t())
    throw DimensionMismatch("base point needs " + std::to_string(x.t()) + " coordinates");
  if (static_cast<int>(y.size()) != x.r() + 1)
    throw DimensionMismatch("fiber point needs " + std::to_string(x.r() + 1) + " coordinates");
}

}  // namespace

mpq_class fiber_height_sq(const HKVariety& x, const ProjectivePoint& q, const ProjectivePoint& y) {
  check_dims(x, q, y);
  const mpz_class nq = base_height_sq(q);
  mpq_class h(weighted_fiber_sum(x, nq, y), pow_z(nq, x.a_max()));
  h.canonicalize();
  return h;
}

mpq_class height_L_sq(const HKVariety& x, const LineBundleClass& l, const HKRationalPoint& p) {
  const mpq_class fib = fiber_height_sq(x, p.base, p.fiber);
  const mpq_class nq(base_height_sq(p.base));
  mpq_class h = pow_q(fib, l.lambda) * pow_q(nq, l.mu);
  h.canonicalize();
  return h;
}

bool height_le_raw(const mpz_class& weighted_sum, const mpz_class& nq, long lambda, long mu,
                   int b_max, const mpq_class& bound_sq) {
  // S^lambda * Nq^e * den <= num, with negative powers moved across.
  const long e = mu - lambda * b_max;
  mpz_class lhs = bound_sq.get_den();
  mpz_class rhs = bound_sq.get_num();
  if (lambda >= 0)
    lhs *= pow_z(weighted_sum, lambda);
  else
    rhs *= pow_z(weighted_sum, -lambda);
  if (e >= 0)
    lhs *= pow_z(nq, e);
  else
    rhs *= pow_z(nq, -e);
  return lhs <= rhs;
}

bool height_le(const HKVariety& x, const LineBundleClass& l, const HKRationalPoint& p,
               const mpq_class& bound) {
  if (bound <= 0) throw DomainError("height bound must be positive");
  check_dims(x, p.base, p.fiber);
  const mpz_class nq = base_height_sq(p.base);
  return height_le_raw(weighted_fiber_sum(x, nq, p.fiber), nq, l.lambda, l.mu, x.a_max(),
                       bound * bound);
}

Region region_of(const HKRationalPoint& p) {
  return p.fiber[0] != 0 ? Region::GoodOpen : Region::SubbundleF;
}

HKRationalPoint restrict_point_to_F(const HKVariety& x, const HKRationalPoint& p) {
  if (x.r() < 2) throw DomainError("restrict_point_to_F needs r >= 2");
  if (p.fiber[0] != 0) throw DomainError("point does not lie on F");
  const int r = x.r();
  std::vector<mpz_class> z;
  z.reserve(r);
  z.push_back(p.fiber[r]);
  for (int i = 1; i < r; ++i) z.push_back(p.fiber[i]);
  return {p.base, ProjectivePoint::from_integers(std::span<const mpz_class>(z))};
}

HKRationalPoint lift_point_from_F(const HKVariety& x, const HKRationalPoint& p_prime) {
  const int r = x.r();
  std::vector<mpz_class> y(r + 1, 0);
  y[r] = p_prime.fiber[0];
  for (int i = 1; i < r; ++i) y[i] = p_prime.fiber[i];
  return {p_prime.base, ProjectivePoint::from_integers(std::span<const mpz_class>(y))};
}

}  // namespace hk
