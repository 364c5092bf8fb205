#pragma once

// Slow, obviously-correct reference implementations used only by tests.

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>
#include <span>
#include <vector>

#include "hk/geometry.hpp"
#include "hk/heights.hpp"

namespace oracle {

// Calls f on every integer vector of length n with |x_i| <= bound_i.
inline void box(const std::vector<long>& bounds, const std::function<void(const std::vector<long>&)>& f) {
  std::vector<long> x(bounds.size());
  for (std::size_t i = 0; i < bounds.size(); ++i) x[i] = -bounds[i];
  for (;;) {
    f(x);
    std::size_t i = 0;
    while (i < x.size() && x[i] == bounds[i]) {
      x[i] = -bounds[i];
      ++i;
    }
    if (i == x.size()) return;
    ++x[i];
  }
}

// Primitive with first nonzero coordinate positive.
inline bool canonical(const std::vector<long>& x) {
  long g = 0;
  for (long c : x) g = std::gcd(g, c);
  if (g != 1) return false;
  for (long c : x)
    if (c != 0) return c > 0;
  return false;
}

inline hk::ProjectivePoint point(const std::vector<long>& x) {
  std::vector<mpz_class> z(x.begin(), x.end());
  return hk::ProjectivePoint::from_integers(std::span<const mpz_class>(z));
}

// Points of P^n with sum x_i^2 <= B^2 by scanning the cube.
inline long projective_count(int n, long b) {
  long count = 0;
  box(std::vector<long>(n + 1, b), [&](const std::vector<long>& x) {
    long s = 0;
    for (long c : x) s += c * c;
    if (s <= b * b && canonical(x)) ++count;
  });
  return count;
}

// Points of X_d(a) with H_L <= B by scanning boxes. Box sizes come from
// H_fib^2 >= Nq^{-b_max} (so Nq^{mu - lambda b_max} <= B^2) and
// y_i^2 Nq^{-b_i} <= H_fib^2 <= (B^2 / Nq^mu)^{1/lambda}. Membership is then
// decided by the exact squared height.
enum class Part { U, F, X };

inline long hk_count(const hk::HKVariety& x, const hk::LineBundleClass& l, long b, Part part) {
  const double b2 = static_cast<double>(b) * b;
  const long e = l.mu - l.lambda * x.a_max();
  const double nq_max = std::pow(b2, 1.0 / static_cast<double>(e));
  const long q_bound = static_cast<long>(std::sqrt(nq_max)) + 1;
  const auto w = x.fiber_weights();
  long count = 0;
  box(std::vector<long>(x.t(), q_bound), [&](const std::vector<long>& q) {
    if (!canonical(q)) return;
    long nq = 0;
    for (long c : q) nq += c * c;
    if (static_cast<double>(nq) > nq_max * (1 + 1e-9)) return;
    const double fib_max = std::pow(b2 / std::pow(static_cast<double>(nq), l.mu), 1.0 / l.lambda);
    std::vector<long> y_bounds;
    for (int bi : w) y_bounds.push_back(static_cast<long>(std::sqrt(std::pow(double(nq), bi) * fib_max * (1 + 1e-9))) + 1);
    const hk::ProjectivePoint base = point(q);
    const mpq_class limit = mpq_class(b) * b;
    box(y_bounds, [&](const std::vector<long>& y) {
      if (!canonical(y)) return;
      if (part == Part::U && y[0] == 0) return;
      if (part == Part::F && y[0] != 0) return;
      if (hk::height_L_sq(x, l, {base, point(y)}) <= limit) ++count;
    });
  });
  return count;
}

inline hk::HKVariety random_variety(std::mt19937_64& rng, int max_r, int max_t, int max_a) {
  std::uniform_int_distribution<int> rd(1, max_r), td(2, max_t), ad(0, max_a);
  const int r = rd(rng);
  const int t = td(rng);
  std::vector<int> a(r);
  for (int& v : a) v = ad(rng);
  std::sort(a.begin(), a.end());
  return hk::HKVariety(r, t, a);
}

}  // namespace oracle
