#include "hk/geometry.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "hk/errors.hpp"

namespace hk {

HKVariety::HKVariety(int r, int t, std::vector<int> a) : r_(r), t_(t), a_(std::move(a)) {
  if (r_ < 1) throw std::invalid_argument("HKVariety: r must be >= 1");
  if (t_ < 2) throw std::invalid_argument("HKVariety: t must be >= 2");
  if (static_cast<int>(a_.size()) != r_)
    throw std::invalid_argument("HKVariety: expected " + std::to_string(r_) + " twist entries");
  if (a_.front() < 0) throw std::invalid_argument("HKVariety: twists must be nonnegative");
  if (!std::is_sorted(a_.begin(), a_.end()))
    throw std::invalid_argument("HKVariety: twists must be nondecreasing");
}

long HKVariety::abs_a() const { return std::accumulate(a_.begin(), a_.end(), 0L); }

int HKVariety::n_x() const {
  return static_cast<int>(std::count(a_.begin(), a_.end(), a_max()));
}

std::vector<int> HKVariety::fiber_weights() const {
  std::vector<int> b(r_ + 1, 0);
  for (int i = 1; i <= r_; ++i) b[i] = a_max() - (i >= 2 ? a_[i - 2] : 0);
  return b;
}

std::string HKVariety::to_string() const {
  std::ostringstream os;
  os << "X_" << dim() << "(";
  for (int i = 0; i < r_; ++i) os << (i ? "," : "") << a_[i];
  os << ")";
  return os.str();
}

std::string HKVariety::literal() const {
  std::ostringstream os;
  os << r_ << "," << t_ << ":";
  for (int i = 0; i < r_; ++i) os << (i ? "," : "") << a_[i];
  return os.str();
}

std::string to_string(PoleCase c) {
  switch (c) {
    case PoleCase::Equal: return "EqualCase";
    case PoleCase::LambdaDominates: return "LambdaDominates";
    case PoleCase::MuDominates: return "MuDominates";
  }
  return "?";
}

bool Fan::rays_primitive() const {
  for (const auto& v : rays) {
    long g = 0;
    for (long c : v) g = std::gcd(g, c);
    if (g != 1) return false;
  }
  return true;
}

namespace {

// Fraction-free Gaussian elimination; exact for any integer matrix.
mpz_class bareiss_det(std::vector<std::vector<mpz_class>> m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  mpz_class prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && m[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(m[k], m[p]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
      }
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

}  // namespace

bool Fan::is_smooth() const {
  const int d = ambient_dim();
  for (const auto& cone : maximal_cones) {
    if (static_cast<int>(cone.size()) != d) return false;
    std::vector<std::vector<mpz_class>> m(d, std::vector<mpz_class>(d));
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) m[i][j] = rays[cone[i]][j];
    mpz_class det = bareiss_det(std::move(m));
    if (abs(det) != 1) return false;
  }
  return true;
}

Fan build_fan(const HKVariety& x) {
  const int r = x.r();
  const int t = x.t();
  const int d = x.dim();
  const auto& a = x.a();
  Fan fan;
  fan.rays.reserve(d + 2);

  // w_0 = u_0 - a_r e_1 + (a_1 - a_r) e_2 + ... with u_0 = -(u_1 + ... + u_{t-1}).
  std::vector<long> w0(d, 0);
  for (int i = 0; i < t - 1; ++i) w0[i] = -1;
  w0[t - 1] = -a[r - 1];
  for (int j = 2; j <= r; ++j) w0[t - 2 + j] = static_cast<long>(a[j - 2]) - a[r - 1];
  fan.rays.push_back(w0);
  for (int i = 1; i <= t - 1; ++i) {
    std::vector<long> w(d, 0);
    w[i - 1] = 1;
    fan.rays.push_back(std::move(w));
  }
  std::vector<long> e0(d, 0);
  for (int j = 0; j < r; ++j) e0[t - 1 + j] = -1;
  fan.rays.push_back(e0);
  for (int j = 1; j <= r; ++j) {
    std::vector<long> e(d, 0);
    e[t - 2 + j] = 1;
    fan.rays.push_back(std::move(e));
  }

  for (int skip_w = 0; skip_w < t; ++skip_w) {
    for (int skip_e = 0; skip_e <= r; ++skip_e) {
      std::vector<int> cone;
      cone.reserve(d);
      for (int i = 0; i < t; ++i)
        if (i != skip_w) cone.push_back(i);
      for (int j = 0; j <= r; ++j)
        if (j != skip_e) cone.push_back(t + j);
      fan.maximal_cones.push_back(std::move(cone));
    }
  }
  return fan;
}

LineBundleClass ray_divisor_class(const HKVariety& x, int index) {
  const int t = x.t();
  if (index < 0 || index >= x.dim() + 2) throw std::out_of_range("ray index");
  if (index < t) return {0, 1};  // D_i = f
  const int j = index - t;
  if (j == 0) return {1, 0};  // E_0 = h
  const long prev = j >= 2 ? x.a()[j - 2] : 0;
  return {1, x.a_max() - prev};  // E_j = h + (a_r - a_{j-1}) f
}

long anticanonical_mu(const HKVariety& x) {
  return static_cast<long>(x.r() + 1) * x.a_max() + x.t() - x.abs_a();
}

LineBundleClass anticanonical(const HKVariety& x) { return {x.r() + 1, anticanonical_mu(x)}; }

Restriction restrict_to_F(const HKVariety& x, const LineBundleClass& l) {
  const int r = x.r();
  const auto& a = x.a();
  if (r == 1) return ProjectiveStratum{x.t() - 1, l.mu - static_cast<long>(a[0]) * l.lambda};
  std::vector<int> a_prime(a.begin(), a.end() - 1);
  const long shift = static_cast<long>(a[r - 1]) - a[r - 2];
  return std::make_pair(HKVariety(r - 1, x.t(), std::move(a_prime)),
                        LineBundleClass{l.lambda, l.mu - l.lambda * shift});
}

mpq_class alpha_constant(const HKVariety& x) {
  mpq_class v(1, (x.r() + 1) * anticanonical_mu(x));
  v.canonicalize();
  return v;
}

ExponentData exponents(const HKVariety& x, const LineBundleClass& l) {
  if (!is_big(l))
    throw NotBig("bundle (" + std::to_string(l.lambda) + "," + std::to_string(l.mu) +
                 ") is not big on " + x.to_string());
  ExponentData e;
  e.lambda_l = mpq_class(x.r() + 1, l.lambda);
  e.lambda_l.canonicalize();
  e.mu_l = mpq_class(anticanonical_mu(x), l.mu);
  e.mu_l.canonicalize();
  if (e.lambda_l == e.mu_l) {
    e.pole_case = PoleCase::Equal;
    e.log_exponent = 1;
    e.a_l = e.lambda_l;
  } else if (e.lambda_l > e.mu_l) {
    e.pole_case = PoleCase::LambdaDominates;
    e.a_l = e.lambda_l;
  } else {
    e.pole_case = PoleCase::MuDominates;
    e.a_l = e.mu_l;
  }
  return e;
}

std::string Stratum::label() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::GoodOpen: {
      os << "U_" << variety->dim() << "(";
      for (int i = 0; i < variety->r(); ++i) os << (i ? "," : "") << variety->a()[i];
      os << ")";
      break;
    }
    case Kind::Product:
      os << "P^" << variety->t() - 1 << "xP^" << variety->r();
      break;
    case Kind::Projective:
      os << "P^" << projective.n;
      break;
  }
  return os.str();
}

std::vector<Stratum> decompose(const HKVariety& x, const LineBundleClass& l, DecompositionMode mode) {
  std::vector<Stratum> out;
  HKVariety cur = x;
  LineBundleClass bundle = l;
  for (;;) {
    Stratum s;
    s.variety = cur;
    s.bundle = bundle;
    s.big = is_big(bundle);
    if (mode == DecompositionMode::StopAtProduct && cur.is_product()) {
      s.kind = Stratum::Kind::Product;
      out.push_back(std::move(s));
      return out;
    }
    s.kind = Stratum::Kind::GoodOpen;
    out.push_back(std::move(s));
    Restriction next = restrict_to_F(cur, bundle);
    if (auto* p = std::get_if<ProjectiveStratum>(&next)) {
      Stratum last;
      last.kind = Stratum::Kind::Projective;
      last.projective = *p;
      last.bundle = {0, p->twist};
      last.big = p->twist > 0;
      out.push_back(std::move(last));
      return out;
    }
    auto& [xv, lv] = std::get<std::pair<HKVariety, LineBundleClass>>(next);
    cur = xv;
    bundle = lv;
  }
}

std::optional<mpq_class> restricted_mu_exponent(const HKVariety& x, const LineBundleClass& l) {
  Restriction next = restrict_to_F(x, l);
  if (auto* p = std::get_if<ProjectiveStratum>(&next)) {
    if (p->twist <= 0) return std::nullopt;
    mpq_class v(x.t(), p->twist);
    v.canonicalize();
    return v;
  }
  const auto& [xv, lv] = std::get<std::pair<HKVariety, LineBundleClass>>(next);
  if (!is_big(lv)) return std::nullopt;
  mpq_class v(anticanonical_mu(xv), lv.mu);
  v.canonicalize();
  return v;
}

std::optional<bool> strongly_accumulates(const HKVariety& x, const LineBundleClass& l) {
  const ExponentData e = exponents(x, l);
  auto mu_f = restricted_mu_exponent(x, l);
  if (!mu_f) return std::nullopt;
  return e.a_l < *mu_f;
}

}  // namespace hk
