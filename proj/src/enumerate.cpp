#include "hk/enumerate.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "hk/errors.hpp"

namespace hk {

namespace {

constexpr i128 kI128Max = (static_cast<i128>(1) << 125);

i128 to_i128(const mpz_class& z) {
  if (z > mpz_class("42535295865117307932921825928971026432"))  // 2^125
    throw std::overflow_error("value exceeds the fixed-width walker range");
  if (z < 0) throw std::overflow_error("negative walker bound");
  // Split into 64-bit halves.
  mpz_class hi = z >> 64;
  mpz_class lo = z - (hi << 64);
  auto hi_u = static_cast<std::uint64_t>(mpz_get_ui(hi.get_mpz_t()));
  std::uint64_t lo_u = 0;
  mpz_export(&lo_u, nullptr, -1, sizeof(lo_u), 0, 0, lo.get_mpz_t());
  return (static_cast<i128>(hi_u) << 64) | static_cast<i128>(lo_u);
}

mpz_class from_i128(i128 v) {
  const bool neg = v < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v);
  auto hi = static_cast<std::uint64_t>(u >> 64);
  auto lo = static_cast<std::uint64_t>(u);
  mpz_class z = hi;
  z <<= 64;
  mpz_class l;
  mpz_import(l.get_mpz_t(), 1, -1, sizeof(lo), 0, 0, &lo);
  z += l;
  return neg ? mpz_class(-z) : z;
}

i128 isqrt(i128 v) {
  if (v <= 0) return 0;
  auto r = static_cast<i128>(std::sqrt(static_cast<long double>(v)));
  while (r > 0 && r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  return r;
}

i128 gcd128(i128 a, i128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::vector<i128> distinct_primes(i128 g) {
  std::vector<i128> ps;
  if (g % 2 == 0) {
    ps.push_back(2);
    while (g % 2 == 0) g /= 2;
  }
  for (i128 p = 3; p * p <= g; p += 2) {
    if (g % p == 0) {
      ps.push_back(p);
      while (g % p == 0) g /= p;
    }
  }
  if (g > 1) ps.push_back(g);
  return ps;
}

// #{1 <= y <= m : gcd(y, g) = 1} by inclusion-exclusion over rad(g).
i128 coprime_upto(i128 g, i128 m) {
  if (m <= 0) return 0;
  const auto ps = distinct_primes(g);
  i128 total = 0;
  const std::size_t n = ps.size();
  for (std::uint64_t mask = 0; mask < (1ULL << n); ++mask) {
    i128 d = 1;
    int bits = 0;
    bool overflow = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1ULL << i)) {
        ++bits;
        if (d > m) {
          overflow = true;
          break;
        }
        d *= ps[i];
      }
    }
    if (overflow || d > m) continue;
    total += (bits % 2 ? -1 : 1) * (m / d);
  }
  return total;
}

class Walker {
 public:
  explicit Walker(std::span<const i128> w) : w_(w) {}

  i128 run(i128 limit, FiberMode mode) {
    if (limit < 0) return 0;
    switch (mode) {
      case FiberMode::Any: return rec(0, limit, 0, true);
      case FiberMode::FirstZero: return w_.size() < 2 ? 0 : rec(1, limit, 0, true);
      case FiberMode::FirstNonzero: {
        ++nodes_;
        const i128 m0 = isqrt(limit / w_[0]);
        if (w_.size() == 1) return m0 >= 1 ? 1 : 0;
        i128 total = 0;
        for (i128 y = 1; y <= m0; ++y) total += rec(1, limit - w_[0] * y * y, y, false);
        return total;
      }
    }
    return 0;
  }

  std::uint64_t nodes() const { return nodes_; }

 private:
  i128 rec(std::size_t k, i128 rem, i128 g, bool leading) {
    ++nodes_;
    const i128 m = isqrt(rem / w_[k]);
    if (k + 1 == w_.size()) {
      if (leading) return m >= 1 ? 1 : 0;
      if (g == 1) return 2 * m + 1;
      return 2 * coprime_upto(g, m);
    }
    i128 total = rec(k + 1, rem, g, leading);
    for (i128 y = 1; y <= m; ++y) {
      const i128 next = rem - w_[k] * y * y;
      if (leading)
        total += rec(k + 1, next, y, false);
      else
        total += 2 * rec(k + 1, next, g == 1 ? 1 : gcd128(g, y), false);
    }
    return total;
  }

  std::span<const i128> w_;
  std::uint64_t nodes_ = 0;
};

class VisitWalker {
 public:
  VisitWalker(std::span<const i128> w, const IntVectorVisitor& visit)
      : w_(w), visit_(visit), y_(w.size(), 0) {}

  void run(i128 limit, FiberMode mode) {
    if (limit < 0) return;
    switch (mode) {
      case FiberMode::Any: rec(0, limit, 0, true); break;
      case FiberMode::FirstZero:
        if (w_.size() >= 2) rec(1, limit, 0, true);
        break;
      case FiberMode::FirstNonzero: {
        const i128 m0 = isqrt(limit / w_[0]);
        for (i128 y = 1; y <= m0; ++y) {
          y_[0] = static_cast<long>(y);
          if (w_.size() == 1) {
            if (y == 1) visit_(y_);
          } else {
            rec(1, limit - w_[0] * y * y, y, false);
          }
        }
        y_[0] = 0;
        break;
      }
    }
  }

 private:
  void rec(std::size_t k, i128 rem, i128 g, bool leading) {
    const i128 m = isqrt(rem / w_[k]);
    const bool last = k + 1 == w_.size();
    auto emit_or_descend = [&](long y, i128 next_g, bool next_leading) {
      y_[k] = y;
      if (last) {
        if (!next_leading && next_g == 1) visit_(y_);
      } else {
        rec(k + 1, rem - w_[k] * static_cast<i128>(y) * y, next_g, next_leading);
      }
    };
    if (leading) {
      if (!last) emit_or_descend(0, 0, true);
      for (i128 y = 1; y <= m; ++y) emit_or_descend(static_cast<long>(y), y, false);
    } else {
      emit_or_descend(0, g, false);
      for (i128 y = 1; y <= m; ++y) {
        const i128 ng = gcd128(g, y);
        emit_or_descend(static_cast<long>(y), ng, false);
        emit_or_descend(-static_cast<long>(y), ng, false);
      }
    }
    y_[k] = 0;
  }

  std::span<const i128> w_;
  const IntVectorVisitor& visit_;
  std::vector<long> y_;
};

mpz_class pow_z(const mpz_class& b, unsigned long e) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

mpz_class iroot(const mpz_class& v, unsigned long k) {
  if (v <= 0) return 0;
  mpz_class r;
  mpz_root(r.get_mpz_t(), v.get_mpz_t(), k);
  return r;
}

// Largest integer S with S^lambda * Nq^(mu - lambda*b_max) <= B^2, or -1.
mpz_class fiber_threshold(const mpz_class& nq, long lambda, long mu, int b_max, const mpq_class& b_sq) {
  const long e = mu - lambda * b_max;
  mpz_class num = b_sq.get_num();
  mpz_class den = b_sq.get_den();
  if (e >= 0)
    den *= pow_z(nq, static_cast<unsigned long>(e));
  else
    num *= pow_z(nq, static_cast<unsigned long>(-e));
  mpz_class q = num / den;
  return iroot(q, static_cast<unsigned long>(lambda));
}

std::vector<i128> fiber_weights_for(const HKVariety& x, const mpz_class& nq, const mpz_class& cap) {
  const auto b = x.fiber_weights();
  std::vector<i128> w;
  w.reserve(b.size());
  for (int bi : b) {
    mpz_class c = pow_z(nq, static_cast<unsigned long>(x.a_max() - bi));
    if (c > cap) c = cap;  // larger weights force the coordinate to zero anyway
    w.push_back(to_i128(c));
  }
  return w;
}

// Canonical base points grouped by norm: (Nq, multiplicity).
std::vector<std::pair<i128, i128>> base_norm_classes(int t, const mpz_class& max_norm) {
  std::map<i128, i128> tally;
  const std::vector<i128> ones(t, 1);
  const i128 limit = to_i128(max_norm);
  IntVectorVisitor v = [&](std::span<const long> q) {
    i128 n = 0;
    for (long c : q) n += static_cast<i128>(c) * c;
    ++tally[n];
  };
  VisitWalker(ones, v).run(limit, FiberMode::Any);
  return {tally.begin(), tally.end()};
}

struct Totals {
  mpz_class count = 0;
  std::uint64_t nodes = 0;
};

Totals count_fibers(const HKVariety& x, const LineBundleClass& l, const mpq_class& bound,
                    const mpz_class& base_max_norm, FiberMode mode, int threads) {
  const auto classes = base_norm_classes(x.t(), base_max_norm);
  const mpq_class b_sq = bound * bound;
  const int b_max = x.a_max();

  constexpr std::size_t kChunk = 32;
  const std::size_t n_chunks = (classes.size() + kChunk - 1) / kChunk;
  std::atomic<std::size_t> next{0};
  std::mutex merge;
  Totals totals;

  auto worker = [&] {
    i128 local = 0;
    std::uint64_t nodes = 0;
    for (;;) {
      const std::size_t chunk = next.fetch_add(1);
      if (chunk >= n_chunks) break;
      const std::size_t end = std::min(classes.size(), (chunk + 1) * kChunk);
      for (std::size_t i = chunk * kChunk; i < end; ++i) {
        const mpz_class nq = from_i128(classes[i].first);
        const mpz_class s_max = fiber_threshold(nq, l.lambda, l.mu, b_max, b_sq);
        if (s_max < 1) continue;
        const auto w = fiber_weights_for(x, nq, s_max + 1);
        Walker walker(w);
        local += classes[i].second * walker.run(to_i128(s_max), mode);
        nodes += walker.nodes();
      }
    }
    std::lock_guard<std::mutex> lock(merge);
    totals.count += from_i128(local);
    totals.nodes += nodes;
  };

  const int n_threads = std::max(1, std::min<int>(threads, static_cast<int>(std::max<std::size_t>(n_chunks, 1))));
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return totals;
}

void require_positive(const mpq_class& bound) {
  if (bound <= 0) throw DomainError("height bound must be positive");
}

Totals count_region(const HKVariety& x, const LineBundleClass& l, const mpq_class& bound, Region region,
                    int threads);

Totals count_subbundle(const HKVariety& x, const LineBundleClass& l, const mpq_class& bound, int threads) {
  Restriction next = restrict_to_F(x, l);
  if (auto* p = std::get_if<ProjectiveStratum>(&next)) {
    if (p->twist <= 0)
      throw NotBig("restriction to F = P^" + std::to_string(p->n) + " is O(" + std::to_string(p->twist) +
                   "), not big: the count is infinite");
    Totals t;
    t.count = count_projective_norm(p->n, norm_bound(bound, p->twist));
    return t;
  }
  const auto& [xv, lv] = std::get<std::pair<HKVariety, LineBundleClass>>(next);
  if (!is_big(lv))
    throw NotBig("restriction to F = " + xv.to_string() + " is (" + std::to_string(lv.lambda) + "," +
                 std::to_string(lv.mu) + "), not big: the count is infinite");
  return count_region(xv, lv, bound, Region::Whole, threads);
}

Totals count_region(const HKVariety& x, const LineBundleClass& l, const mpq_class& bound, Region region,
                    int threads) {
  require_positive(bound);
  switch (region) {
    case Region::GoodOpen:
      if (!is_big(l))
        throw NotBig("bundle (" + std::to_string(l.lambda) + "," + std::to_string(l.mu) + ") is not big on " +
                     x.to_string());
      // H_fib >= 1 on U, so Nq^mu <= B^2.
      return count_fibers(x, l, bound, norm_bound(bound, l.mu), FiberMode::FirstNonzero, threads);
    case Region::SubbundleF:
      return count_subbundle(x, l, bound, threads);
    case Region::Whole: {
      Totals u = count_region(x, l, bound, Region::GoodOpen, threads);
      Totals f = count_subbundle(x, l, bound, threads);
      u.count += f.count;
      u.nodes += f.nodes;
      return u;
    }
  }
  return {};
}

}  // namespace

WalkStats count_primitive_in_ellipsoid(std::span<const i128> weights, i128 limit, FiberMode mode) {
  for (i128 w : weights)
    if (w <= 0) throw std::invalid_argument("ellipsoid weights must be positive");
  Walker walker(weights);
  WalkStats s;
  s.count = walker.run(limit, mode);
  s.nodes = walker.nodes();
  return s;
}

void visit_primitive_in_ellipsoid(std::span<const i128> weights, i128 limit, FiberMode mode,
                                  const IntVectorVisitor& visit) {
  for (i128 w : weights)
    if (w <= 0) throw std::invalid_argument("ellipsoid weights must be positive");
  VisitWalker(weights, visit).run(limit, mode);
}

mpz_class count_projective_norm(int n, const mpz_class& max_norm) {
  if (n < 1) throw DomainError("projective dimension must be >= 1");
  const std::vector<i128> ones(n + 1, 1);
  return from_i128(Walker(ones).run(to_i128(max_norm), FiberMode::Any));
}

mpz_class norm_bound(const mpq_class& bound, long twist) {
  if (twist <= 0) throw DomainError("norm_bound needs a positive twist");
  const mpq_class b_sq = bound * bound;
  const mpz_class fl = b_sq.get_num() / b_sq.get_den();
  return iroot(fl, static_cast<unsigned long>(twist));
}

void enum_projective(int n, const mpq_class& bound, const std::function<void(const ProjectivePoint&)>& visit) {
  if (n < 1) throw DomainError("projective dimension must be >= 1");
  require_positive(bound);
  const std::vector<i128> ones(n + 1, 1);
  IntVectorVisitor v = [&](std::span<const long> x) {
    std::vector<mpz_class> z(x.begin(), x.end());
    visit(ProjectivePoint::from_integers(std::span<const mpz_class>(z)));
  };
  VisitWalker(ones, v).run(to_i128(norm_bound(bound, 1)), FiberMode::Any);
}

mpz_class count_projective(int n, const mpq_class& bound) {
  require_positive(bound);
  return count_projective_norm(n, norm_bound(bound, 1));
}

namespace {

// #{x in Z^dims : |x|^2 <= k}, by slicing along the first coordinate.
i128 ball_count(int dims, i128 k) {
  if (k < 0) return 0;
  if (dims == 0) return 1;
  if (dims == 1) return 2 * isqrt(k) + 1;
  const i128 m = isqrt(k);
  i128 total = ball_count(dims - 1, k);
  for (i128 x = 1; x <= m; ++x) total += 2 * ball_count(dims - 1, k - x * x);
  return total;
}

}  // namespace

mpz_class count_projective_moebius(int n, const mpq_class& bound) {
  if (n < 1) throw DomainError("projective dimension must be >= 1");
  require_positive(bound);
  const i128 m = to_i128(norm_bound(bound, 1));
  const i128 dmax = isqrt(m);
  // Moebius function by a linear sieve up to sqrt(B^2).
  const auto size = static_cast<std::size_t>(dmax) + 1;
  std::vector<int> mu(size, 1);
  std::vector<bool> composite(size, false);
  std::vector<std::size_t> primes;
  for (std::size_t i = 2; i < size; ++i) {
    if (!composite[i]) {
      primes.push_back(i);
      mu[i] = -1;
    }
    for (std::size_t p : primes) {
      if (i * p >= size) break;
      composite[i * p] = true;
      if (i % p == 0) {
        mu[i * p] = 0;
        break;
      }
      mu[i * p] = -mu[i];
    }
  }
  i128 total = 0;
  for (i128 d = 1; d <= dmax; ++d) {
    const int md = mu[static_cast<std::size_t>(d)];
    if (md == 0) continue;
    total += md * (ball_count(n + 1, m / (d * d)) - 1);
  }
  return from_i128(total / 2);
}

CountResult count_hk(const CountRequest& req) {
  const auto start = std::chrono::steady_clock::now();
  CountResult result;
  require_positive(req.bound);
  if (const auto* p = std::get_if<ProjectiveTarget>(&req.target)) {
    if (req.region != Region::Whole) throw DomainError("projective space has no subbundle; use region x");
    if (p->twist <= 0) throw NotBig("O(" + std::to_string(p->twist) + ") is not big: the count is infinite");
    result.count = count_projective_norm(p->n, norm_bound(req.bound, p->twist));
  } else {
    const auto& x = std::get<HKVariety>(req.target);
    Totals t = count_region(x, req.bundle, req.bound, req.region, std::max(1, req.threads));
    result.count = t.count;
    result.points_visited = t.nodes;
  }
  result.elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

void enumerate_hk(const HKVariety& x, const LineBundleClass& l, const mpq_class& bound, Region region,
                  const std::function<void(const HKRationalPoint&)>& visit) {
  require_positive(bound);
  const mpq_class b_sq = bound * bound;
  if (region == Region::GoodOpen || region == Region::Whole) {
    if (!is_big(l)) throw NotBig("bundle is not big on " + x.to_string());
    const std::vector<i128> ones(x.t(), 1);
    IntVectorVisitor on_base = [&](std::span<const long> q) {
      std::vector<mpz_class> qz(q.begin(), q.end());
      const ProjectivePoint base = ProjectivePoint::from_integers(std::span<const mpz_class>(qz));
      const mpz_class nq = base_height_sq(base);
      const mpz_class s_max = fiber_threshold(nq, l.lambda, l.mu, x.a_max(), b_sq);
      if (s_max < 1) return;
      const auto w = fiber_weights_for(x, nq, s_max + 1);
      IntVectorVisitor on_fiber = [&](std::span<const long> y) {
        std::vector<mpz_class> yz(y.begin(), y.end());
        visit({base, ProjectivePoint::from_integers(std::span<const mpz_class>(yz))});
      };
      VisitWalker(w, on_fiber).run(to_i128(s_max), FiberMode::FirstNonzero);
    };
    VisitWalker(ones, on_base).run(to_i128(norm_bound(bound, l.mu)), FiberMode::Any);
  }
  if (region == Region::SubbundleF || region == Region::Whole) {
    Restriction next = restrict_to_F(x, l);
    if (auto* p = std::get_if<ProjectiveStratum>(&next)) {
      if (p->twist <= 0) throw NotBig("restriction to F is not big: the count is infinite");
      const ProjectivePoint f_fiber = ProjectivePoint::from_integers({0, 1});
      const std::vector<i128> ones(x.t(), 1);
      IntVectorVisitor on_base = [&](std::span<const long> q) {
        std::vector<mpz_class> qz(q.begin(), q.end());
        visit({ProjectivePoint::from_integers(std::span<const mpz_class>(qz)), f_fiber});
      };
      VisitWalker(ones, on_base).run(to_i128(norm_bound(bound, p->twist)), FiberMode::Any);
    } else {
      const auto& [xv, lv] = std::get<std::pair<HKVariety, LineBundleClass>>(next);
      if (!is_big(lv)) throw NotBig("restriction to F is not big: the count is infinite");
      enumerate_hk(xv, lv, bound, Region::Whole,
                   [&](const HKRationalPoint& pp) { visit(lift_point_from_F(x, pp)); });
    }
  }
}

mpz_class count_hk_direct(const HKVariety& x, const LineBundleClass& l, const mpq_class& bound, FiberMode mode) {
  require_positive(bound);
  if (l.lambda <= 0) throw NotBig("lambda must be positive");
  mpz_class base_max;
  if (mode == FiberMode::FirstNonzero) {
    if (l.mu <= 0) throw NotBig("mu must be positive");
    base_max = norm_bound(bound, l.mu);
  } else {
    // Some y_i with i >= 1 has weight 1, so Nq^(mu - lambda a_r) <= B^2.
    const long e = l.mu - l.lambda * x.a_max();
    if (e <= 0) throw NotBig("F-points of unbounded base height: the count is infinite");
    base_max = norm_bound(bound, e);
  }
  return count_fibers(x, l, bound, base_max, mode, 1).count;
}

std::vector<SweepRow> sweep(const CountRequest& req, std::span<const mpq_class> grid,
                            const std::function<double(const mpq_class&)>& predicted) {
  std::vector<SweepRow> rows;
  rows.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (i && grid[i] <= grid[i - 1]) throw DomainError("sweep grid must be strictly increasing");
    CountRequest r = req;
    r.bound = grid[i];
    const CountResult c = count_hk(r);
    SweepRow row;
    row.bound = grid[i];
    row.count = c.count;
    row.elapsed = c.elapsed;
    if (predicted) {
      row.predicted = predicted(grid[i]);
      row.ratio = row.predicted > 0 ? c.count.get_d() / row.predicted : 0.0;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

PowerFit fit_power_law(std::span<const double> bounds, std::span<const double> counts) {
  if (bounds.size() != counts.size() || bounds.size() < 4) throw DegenerateFit("need at least 4 grid points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const auto n = static_cast<double>(bounds.size());
  for (std::size_t i = 0; i < bounds.size(); ++i) {
    if (bounds[i] <= 0 || counts[i] <= 0) throw DegenerateFit("log-log fit needs positive data");
    const double lx = std::log(bounds[i]);
    const double ly = std::log(counts[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double det = n * sxx - sx * sx;
  if (!(std::abs(det) > 1e-12 * n * sxx)) throw DegenerateFit("grid has no spread in log B");
  PowerFit fit;
  fit.slope = (n * sxy - sx * sy) / det;
  fit.coefficient = std::exp((sy - fit.slope * sx) / n);
  return fit;
}

LogFit fit_log_power(std::span<const double> bounds, std::span<const double> counts, double exponent) {
  if (bounds.size() != counts.size() || bounds.size() < 4) throw DegenerateFit("need at least 4 grid points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const auto n = static_cast<double>(bounds.size());
  for (std::size_t i = 0; i < bounds.size(); ++i) {
    if (bounds[i] <= 1) throw DegenerateFit("log fit needs B > 1");
    const double lx = std::log(bounds[i]);
    const double y = counts[i] / std::pow(bounds[i], exponent);
    sx += lx;
    sy += y;
    sxx += lx * lx;
    sxy += lx * y;
  }
  const double det = n * sxx - sx * sx;
  if (!(std::abs(det) > 1e-12 * n * sxx)) throw DegenerateFit("grid has no spread in log B");
  LogFit fit;
  fit.log_coefficient = (n * sxy - sx * sy) / det;
  fit.constant = (sy - fit.log_coefficient * sx) / n;
  return fit;
}

}  // namespace hk
