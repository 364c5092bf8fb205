#pragma once

// Standard Arakelov heights over Q.
//
// For a primitive integer vector x the finite places contribute 1 and the
// archimedean place contributes the Euclidean norm, so H(x)^2 = sum x_i^2.
// On X_d(a) the fiber over a base point Q is trivialized as Z^{r+1} with
// coordinate i scaled by |q|^{-b_i}; hence
//
//   H_fib(P)^2 = sum_i y_i^2 Nq^{-b_i},   H_L(P)^2 = H_fib^{2 lambda} Nq^mu,
//
// where Nq = |q|^2. All values are carried as exact fractions.

#include <gmpxx.h>

#include <span>
#include <string>
#include <vector>

#include "hk/geometry.hpp"

namespace hk {

// Primitive integer vector whose first nonzero coordinate is positive.
class ProjectivePoint {
 public:
  ProjectivePoint() = default;
  // Throws AllZero; scales and fixes the sign.
  static ProjectivePoint from_rationals(std::span<const mpq_class> v);
  static ProjectivePoint from_integers(std::span<const mpz_class> v);
  static ProjectivePoint from_integers(std::initializer_list<long> v);

  const std::vector<mpz_class>& coords() const { return coords_; }
  std::size_t size() const { return coords_.size(); }
  const mpz_class& operator[](std::size_t i) const { return coords_[i]; }

  std::string literal() const;  // "[x0:x1:...]"

  friend bool operator==(const ProjectivePoint&, const ProjectivePoint&) = default;
  friend auto operator<=>(const ProjectivePoint& a, const ProjectivePoint& b) {
    return a.literal() <=> b.literal();
  }

 private:
  std::vector<mpz_class> coords_;
};

inline ProjectivePoint canonicalize(std::span<const mpq_class> v) {
  return ProjectivePoint::from_rationals(v);
}

struct HKRationalPoint {
  ProjectivePoint base;   // length t
  ProjectivePoint fiber;  // length r+1; index 0 is the O-summand

  std::string literal() const { return base.literal() + ";" + fiber.literal(); }
  friend bool operator==(const HKRationalPoint&, const HKRationalPoint&) = default;
};

enum class Region { GoodOpen, SubbundleF, Whole };

std::string to_string(Region r);

mpz_class base_height_sq(const ProjectivePoint& q);

// Throws DimensionMismatch.
mpq_class fiber_height_sq(const HKVariety& x, const ProjectivePoint& q, const ProjectivePoint& y);

// Exact H_L(P)^2 for arbitrary integer lambda, mu.
mpq_class height_L_sq(const HKVariety& x, const LineBundleClass& l, const HKRationalPoint& p);

// H_L(P) <= B decided by integer arithmetic. Requires B > 0.
bool height_le(const HKVariety& x, const LineBundleClass& l, const HKRationalPoint& p,
               const mpq_class& bound);

// Same comparison from the raw quantities: S = sum y_i^2 Nq^{b_max - b_i}.
// Decides S^lambda * Nq^(mu - lambda b_max) <= B^2.
bool height_le_raw(const mpz_class& weighted_sum, const mpz_class& nq, long lambda, long mu,
                   int b_max, const mpq_class& bound_sq);

Region region_of(const HKRationalPoint& p);

// An F-point (y_0 = 0) of X as a point of X' = X_{d-1}(a_1..a_{r-1}) under
// F = P(Y (x) O(a_r - a_{r-1})). The O-summand of X' is the last fiber
// coordinate of X, so P' = (Q, (y_r, y_1, ..., y_{r-1})). Requires r >= 2.
HKRationalPoint restrict_point_to_F(const HKVariety& x, const HKRationalPoint& p);

// Inverse of restrict_point_to_F.
HKRationalPoint lift_point_from_F(const HKVariety& x, const HKRationalPoint& p_prime);

}  // namespace hk
