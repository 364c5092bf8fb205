#include "hk/constants.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "hk/enumerate.hpp"
#include "hk/errors.hpp"
#include "hk/quadrature.hpp"

namespace hk {

namespace {

Real to_real(const mpq_class& q) {
  // Exact enough: numerator and denominator are small in every caller.
  return static_cast<Real>(q.get_num().get_d()) / static_cast<Real>(q.get_den().get_d());
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

Real parse_real(std::string_view s, std::string_view line) {
  std::string str(trim(s));
  try {
    std::size_t used = 0;
    const Real v = std::stold(str, &used);
    if (used != str.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ParseError("expected a number in '" + std::string(line) + "'");
  }
}

long parse_int(std::string_view s, std::string_view line) {
  std::string str(trim(s));
  try {
    std::size_t used = 0;
    const long v = std::stol(str, &used);
    if (used != str.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ParseError("expected an integer in '" + std::string(line) + "'");
  }
}

// Sample tables are keyed by s; lookups accept a relative mismatch of 1e-12
// so that "3.5" in a file matches 7/2 computed from a rational exponent.
template <typename Map, typename Key>
std::optional<Real> lookup(const Map& m, const Key& k, Real s) {
  for (const auto& [key, value] : m) {
    Real ks;
    if constexpr (std::is_same_v<Key, Real>) {
      ks = key;
    } else {
      if (key.first != k.first) continue;
      ks = key.second;
    }
    if (std::fabs(ks - s) <= 1e-12L * std::max<Real>(1, std::fabs(s))) return value;
  }
  return std::nullopt;
}

}  // namespace

FieldInvariants FieldInvariants::rationals() { return FieldInvariants{}; }

FieldInvariants FieldInvariants::parse(std::string_view text) {
  FieldInvariants inv;
  inv.builtin_rationals = false;
  bool seen[6] = {};
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError("expected key=value, got '" + std::string(line) + "'");
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = line.substr(eq + 1);
    if (key == "r1") {
      inv.r1 = static_cast<int>(parse_int(value, line));
      seen[0] = true;
    } else if (key == "r2") {
      inv.r2 = static_cast<int>(parse_int(value, line));
      seen[1] = true;
    } else if (key == "w") {
      inv.w = parse_int(value, line);
      seen[2] = true;
    } else if (key == "absDisc") {
      inv.abs_disc = parse_int(value, line);
      seen[3] = true;
    } else if (key == "regulator") {
      inv.regulator = parse_real(value, line);
      seen[4] = true;
    } else if (key == "classNumber") {
      inv.class_number = parse_int(value, line);
      seen[5] = true;
    } else if (key.starts_with("zetaK.")) {
      inv.zeta_k_samples[parse_real(key.substr(6), line)] = parse_real(value, line);
    } else if (key.starts_with("zetaP.")) {
      const std::string_view rest = key.substr(6);
      const auto dot = rest.find('.');
      if (dot == std::string_view::npos) throw ParseError("zetaP key needs zetaP.<m>.<s>: '" + std::string(line) + "'");
      const int m = static_cast<int>(parse_int(rest.substr(0, dot), line));
      inv.zeta_p_samples[{m, parse_real(rest.substr(dot + 1), line)}] = parse_real(value, line);
    } else {
      throw ParseError("unknown field invariant '" + std::string(key) + "'");
    }
  }
  static const char* names[6] = {"r1", "r2", "w", "absDisc", "regulator", "classNumber"};
  for (int i = 0; i < 6; ++i)
    if (!seen[i]) throw ParseError(std::string("field invariants file lacks '") + names[i] + "'");
  if (inv.r1 < 0 || inv.r2 < 0 || inv.degree() < 1) throw ParseError("need r1, r2 >= 0 and r1 + 2 r2 >= 1");
  if (inv.w < 1 || inv.abs_disc < 1 || inv.class_number < 1 || !(inv.regulator > 0))
    throw ParseError("w, absDisc, classNumber must be >= 1 and the regulator positive");
  return inv;
}

FieldInvariants FieldInvariants::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open field invariants file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

Real FieldInvariants::zeta_k(Real s) const {
  if (builtin_rationals) return zeta(s);
  if (auto v = lookup(zeta_k_samples, s, s)) return *v;
  throw DomainError("no zetaK sample at s = " + std::to_string(static_cast<double>(s)));
}

Real xi_K(Real s, const FieldInvariants& inv) {
  if (!(s > 1)) throw DomainError("xi_K is evaluated only for s > 1");
  const Real real_factor = std::pow(kPi, -s / 2) * gamma_fn(s / 2);
  const Real complex_factor = std::pow(2 * kPi, -s) * gamma_fn(s);
  return std::pow(2.0L, -inv.r1) * std::pow(real_factor, inv.r1) * std::pow(complex_factor, inv.r2) * inv.zeta_k(s);
}

Real zetaP_closed_form(int m, Real s) {
  if (!(s > m + 1)) throw DomainError("Z_{P^m}(s) converges only for s > m + 1");
  if (m == 1) return 2 * zeta(s / 2) * L_minus4(s / 2) / zeta(s);
  if (m == 3) return 4 * (1 - std::pow(4.0L, 1 - s / 2)) * zeta(s / 2) * zeta(s / 2 - 1) / zeta(s);
  throw DomainError("no closed form for Z_{P^" + std::to_string(m) + "}");
}

namespace {

// Smooth cutoff: 1 on [0,1], 0 on [2,inf), C-infinity in between.
Real cutoff(Real u) {
  if (u <= 1) return 1;
  if (u >= 2) return 0;
  const Real x = u - 1;
  const Real a = std::exp(-1 / (1 - x));
  const Real b = std::exp(-1 / x);
  return a / (a + b);
}

}  // namespace

Real epstein_zeta(int k, Real s, int radius) {
  if (k < 1) throw DomainError("epstein_zeta needs k >= 1");
  if (!(s > k)) throw DomainError("epstein_zeta needs s > k");
  const Real big_r = radius;
  const auto n_max = static_cast<std::size_t>(4L * radius * radius);
  // r_k(n) for n <= n_max by repeated convolution with the squares.
  std::vector<std::uint64_t> reps(n_max + 1, 0);
  reps[0] = 1;
  for (int dim = 0; dim < k; ++dim) {
    std::vector<std::uint64_t> next(n_max + 1, 0);
    for (std::size_t n = 0; n <= n_max; ++n) {
      if (reps[n] == 0) continue;
      next[n] += reps[n];
      for (std::size_t y = 1; n + y * y <= n_max; ++y) next[n + y * y] += 2 * reps[n];
    }
    reps.swap(next);
  }
  Real sum = 0;
  for (std::size_t n = n_max; n >= 1; --n) {
    if (reps[n] == 0) continue;
    const Real rho = std::sqrt(static_cast<Real>(n));
    sum += static_cast<Real>(reps[n]) * std::pow(rho, -s) * cutoff(rho / big_r);
  }
  const Real sphere = 2 * std::pow(kPi, k / 2.0L) / gamma_fn(k / 2.0L);
  const auto inner = integrate([&](Real u) { return std::pow(u, k - 1 - s) * (1 - cutoff(u)); }, 1, 2, 1e-20L);
  const Real outer = std::pow(2.0L, k - s) / (s - k);
  return sum + sphere * std::pow(big_r, k - s) * (inner.value + outer);
}

Real zetaP_lattice(int m, Real s) {
  if (!(s > m + 1)) throw DomainError("Z_{P^m}(s) converges only for s > m + 1");
  return epstein_zeta(m + 1, s) / (2 * zeta(s));
}

ZetaSum zetaP_numeric(int m, Real s, Real tol, std::uint64_t budget) {
  ZetaSum out;
  if (m < -1) throw DomainError("zetaP_numeric needs m >= -1");
  if (m == -1) return out;
  if (m == 0) {
    out.value = 1;
    out.points = 1;
    return out;
  }
  if (!(s > m + 1)) throw DomainError("Z_{P^m}(s) converges only for s > m + 1");
  if (!(tol > 0)) throw DomainError("tolerance must be positive");
  const int k = m + 1;
  const Real ball = std::pow(kPi, k / 2.0L) / gamma_fn(k / 2.0L + 1);
  const Real kappa = ball * std::pow(1 + std::sqrt(static_cast<Real>(k)) / 2, k) / 2;
  const Real excess = s - k;
  const Real h_needed = std::max<Real>(2, std::pow(kappa * s / (excess * tol), 1 / excess));
  const Real expected_points = kappa * std::pow(h_needed, k);
  if (expected_points > static_cast<Real>(budget) || h_needed > 1e9L)
    throw TooCloseToPole("Z_{P^" + std::to_string(m) + "}(" + std::to_string(static_cast<double>(s)) +
                         ") needs about " + std::to_string(static_cast<double>(expected_points)) +
                         " points for the requested tolerance");
  const auto max_norm = static_cast<std::size_t>(std::ceil(h_needed * h_needed));
  std::vector<std::uint32_t> tally(max_norm + 1, 0);
  const std::vector<i128> ones(k, 1);
  visit_primitive_in_ellipsoid(ones, static_cast<i128>(max_norm), FiberMode::Any, [&](std::span<const long> x) {
    std::size_t n = 0;
    for (long c : x) n += static_cast<std::size_t>(c * c);
    ++tally[n];
  });
  Real sum = 0;
  for (std::size_t n = max_norm; n >= 1; --n) {
    if (tally[n] == 0) continue;
    out.points += tally[n];
    sum += tally[n] * std::pow(static_cast<Real>(n), -s / 2);
  }
  const Real h_max = std::sqrt(static_cast<Real>(max_norm));
  out.value = sum;
  out.h_max = h_max;
  out.tail_bound = kappa * s / excess * std::pow(h_max, -excess);
  return out;
}

Real zetaP(int m, Real s, const FieldInvariants& inv) {
  if (m == -1) return 0;
  if (m == 0) return 1;
  if (m < -1) throw DomainError("Z_{P^m} needs m >= -1");
  if (!(s > m + 1)) throw DomainError("Z_{P^m}(s) converges only for s > m + 1");
  if (!inv.builtin_rationals) {
    if (auto v = lookup(inv.zeta_p_samples, std::pair<int, Real>{m, s}, s)) return *v;
    throw DomainError("no zetaP." + std::to_string(m) + " sample at s = " + std::to_string(static_cast<double>(s)));
  }
  if (m == 1 || m == 3) return zetaP_closed_form(m, s);
  return zetaP_lattice(m, s);
}

Real AsymptoticPrediction::main_term(Real bound) const {
  Real v = C * std::pow(bound, to_real(a_l));
  if (log_exponent > 0) v *= std::pow(std::log(bound), log_exponent);
  return v;
}

AsymptoticPrediction schanuel_constant(int n, const FieldInvariants& inv) {
  return schanuel_twisted(n, 1, inv);
}

AsymptoticPrediction schanuel_twisted(int n, long twist, const FieldInvariants& inv) {
  if (n < 1) throw DomainError("Schanuel constant needs n >= 1");
  if (twist <= 0) throw NotBig("O(" + std::to_string(twist) + ") on P^" + std::to_string(n) + " is not big");
  AsymptoticPrediction p;
  p.a_l = mpq_class(n + 1, twist);
  p.a_l.canonicalize();
  p.log_exponent = 0;
  p.C = inv.regulator * inv.class_number /
        ((n + 1) * inv.w * std::pow(static_cast<Real>(inv.abs_disc), (n + 1) / 2.0L) * xi_K(n + 1, inv));
  p.case_tag = "Schanuel";
  p.source = "Schanuel";
  return p;
}

namespace {

constexpr Real kPoleMargin = 1e-9L;

AsymptoticPrediction predict_impl(const HKVariety& x, const LineBundleClass& l, const FieldInvariants& inv) {
  if (!is_big(l))
    throw NotBig("(" + std::to_string(l.lambda) + "," + std::to_string(l.mu) + ") is not big on " + x.to_string());
  const ExponentData e = exponents(x, l);
  const int r = x.r();
  const int t = x.t();
  const Real rh = inv.regulator * inv.class_number;
  const Real disc = inv.abs_disc;
  const Real w = inv.w;
  const Real mu = l.mu;
  const long mu_anti = anticanonical_mu(x);

  AsymptoticPrediction p;
  p.a_l = e.a_l;
  p.log_exponent = e.log_exponent;
  p.case_tag = to_string(e.pole_case);
  p.source = x.is_product() ? "Thm6.3" : (l == anticanonical(x) ? "Thm1.2" : "Thm6.2");

  switch (e.pole_case) {
    case PoleCase::Equal:
      p.C = rh * rh * std::pow(disc, -(x.dim() + 2) / 2.0L) /
            (w * w * (r + 1) * mu * xi_K(r + 1, inv) * xi_K(t, inv));
      break;
    case PoleCase::LambdaDominates: {
      mpq_class arg = l.mu * e.lambda_l;
      if (!x.is_product()) arg += x.abs_a() - (r + 1) * static_cast<long>(x.a_max());
      if (!(arg > t)) throw std::logic_error("LambdaDominates argument left the convergence domain");
      p.C = rh * std::pow(disc, -(r + 1) / 2.0L) / (w * (r + 1) * xi_K(r + 1, inv)) * zetaP(t - 1, to_real(arg), inv);
      break;
    }
    case PoleCase::MuDominates: {
      const mpq_class lam_mu = l.lambda * e.mu_l;
      if (x.is_product()) {
        p.C = rh * std::pow(disc, -t / 2.0L) / (w * t * xi_K(t, inv)) * zetaP(r, to_real(lam_mu), inv);
        break;
      }
      const int n_x = x.n_x();
      const mpq_class s_star = lam_mu + n_x - (r + 1);
      if (!(s_star > n_x)) throw std::logic_error("MuDominates argument left the convergence domain");
      const Real s = to_real(s_star);
      if (s - 1 < kPoleMargin) throw TooCloseToPole("xi_K evaluated too close to its pole at s = 1");
      const Real diff = zetaP(n_x - 1, s, inv) - zetaP(n_x - 2, s, inv);
      p.C = rh * std::pow(disc, -(t - n_x + r + 1) / 2.0L) * xi_K(s, inv) /
            (w * mu_anti * xi_K(to_real(lam_mu), inv) * xi_K(t, inv)) * diff;
      break;
    }
  }
  return p;
}

int compare_growth(const AsymptoticPrediction& a, const AsymptoticPrediction& b) {
  if (a.a_l != b.a_l) return a.a_l < b.a_l ? -1 : 1;
  if (a.log_exponent != b.log_exponent) return a.log_exponent < b.log_exponent ? -1 : 1;
  return 0;
}

AsymptoticPrediction combine(const AsymptoticPrediction& u, const AsymptoticPrediction& f) {
  const int c = compare_growth(u, f);
  if (c > 0) return u;
  if (c < 0) return f;
  AsymptoticPrediction sum = u;
  sum.C += f.C;
  return sum;
}

}  // namespace

AsymptoticPrediction predict(const HKVariety& x, const LineBundleClass& l, const FieldInvariants& inv) {
  return predict_impl(x, l, inv);
}

AsymptoticPrediction predict_region(const HKVariety& x, const LineBundleClass& l, Region region,
                                    const FieldInvariants& inv) {
  switch (region) {
    case Region::GoodOpen: {
      AsymptoticPrediction whole = predict_impl(x, l, inv);
      if (!x.is_product()) return whole;
      const AsymptoticPrediction f = predict_region(x, l, Region::SubbundleF, inv);
      if (compare_growth(whole, f) == 0) whole.C -= f.C;
      return whole;
    }
    case Region::SubbundleF: {
      Restriction next = restrict_to_F(x, l);
      if (auto* p = std::get_if<ProjectiveStratum>(&next)) return schanuel_twisted(p->n, p->twist, inv);
      const auto& [xv, lv] = std::get<std::pair<HKVariety, LineBundleClass>>(next);
      if (!is_big(lv)) throw NotBig("restriction of (" + std::to_string(l.lambda) + "," + std::to_string(l.mu) +
                                    ") to F is not big");
      return predict_region(xv, lv, Region::Whole, inv);
    }
    case Region::Whole:
      if (x.is_product()) return predict_impl(x, l, inv);
      return combine(predict_impl(x, l, inv), predict_region(x, l, Region::SubbundleF, inv));
  }
  throw std::logic_error("unknown region");
}

std::vector<HirzebruchRow> hirzebruch_table(const FieldInvariants& inv) {
  const HKVariety x(1, 2, {1});
  std::vector<HirzebruchRow> rows;
  for (long lambda = 1; lambda <= 3; ++lambda)
    for (long mu = 1; mu <= 3; ++mu)
      rows.push_back({lambda, mu, predict_region(x, {lambda, mu}, Region::GoodOpen, inv)});
  return rows;
}

namespace {

std::string growth_text(const AsymptoticPrediction& p) {
  std::ostringstream os;
  os.precision(10);
  os << static_cast<double>(p.C) << " B^" << p.a_l.get_str();
  if (p.log_exponent == 1) os << " log(B)";
  if (p.log_exponent > 1) os << " log(B)^" << p.log_exponent;
  return os.str();
}

}  // namespace

ThreefoldRow threefold_row(int a1, int a2, const std::string& case_label, const FieldInvariants& inv) {
  ThreefoldRow row;
  row.case_label = case_label;
  row.a1 = a1;
  row.a2 = a2;
  const HKVariety x(2, 2, {a1, a2});
  const LineBundleClass k = anticanonical(x);

  ThreefoldStratum u{"U", true, predict_region(x, k, Region::GoodOpen, inv)};

  const HKVariety xp(1, 2, {a1});
  const LineBundleClass lp{3, 2 + 2L * a1 - a2};
  ThreefoldStratum up{"U'", is_big(lp), std::nullopt};
  if (up.big) up.prediction = predict_region(xp, lp, Region::GoodOpen, inv);

  const long m = 2L - a1 - a2;
  ThreefoldStratum fp{"F'", m > 0, std::nullopt};
  if (fp.big) fp.prediction = schanuel_twisted(1, m, inv);

  row.l_big = up.big;
  row.m_big = fp.big;
  row.strata = {u, up, fp};

  const ThreefoldStratum* top = nullptr;
  for (const auto& s : row.strata)
    if (s.prediction && (!top || compare_growth(*s.prediction, *top->prediction) > 0)) top = &s;
  for (const auto& s : row.strata) {
    const std::string n = "N(" + s.name + ",H,B)";
    if (!s.prediction) {
      row.comparison.push_back(n + "=infinite");
    } else if (compare_growth(*s.prediction, *top->prediction) < 0) {
      row.comparison.push_back(n + "=o(N(" + top->name + ",H,B))");
    } else {
      row.comparison.push_back(n + " ~ " + growth_text(*s.prediction));
      row.dominant += (row.dominant.empty() ? "" : "+") + s.name;
    }
  }
  return row;
}

std::vector<ThreefoldRow> threefold_table(const FieldInvariants& inv) {
  return {threefold_row(0, 0, "(a1,a2)=(0,0)", inv), threefold_row(0, 1, "(a1,a2)=(0,1)", inv),
          threefold_row(1, 2, "1<=a1<a2<2a1+2", inv), threefold_row(1, 1, "1<=a1=a2", inv),
          threefold_row(0, 2, "2a1+2<=a2", inv)};
}

}  // namespace hk
