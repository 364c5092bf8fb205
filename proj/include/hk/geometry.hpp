#pragma once

// Combinatorial model of Hirzebruch-Kleinschmidt varieties
//
//   X_d(a_1,...,a_r) = P(O + O(-a_r) + O(a_1 - a_r) + ... + O(a_{r-1} - a_r))
//
// over P^{t-1}, with d = r + t - 1. Pic(X) = Zh + Zf where h = O_X(1) and
// f = pi^* O(1). Everything in this header is exact; no floating point.

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace hk {

class HKVariety {
 public:
  // Throws std::invalid_argument unless r >= 1, t >= 2, a.size() == r and
  // 0 <= a_1 <= ... <= a_r.
  HKVariety(int r, int t, std::vector<int> a);

  int r() const { return r_; }
  int t() const { return t_; }
  const std::vector<int>& a() const { return a_; }

  int dim() const { return r_ + t_ - 1; }
  int a_max() const { return a_.back(); }
  long abs_a() const;
  // N_X = #{i : a_i = a_r}.
  int n_x() const;
  // b_0 = 0, b_i = a_r - a_{i-1} (a_0 = 0); weight of fiber coordinate i.
  std::vector<int> fiber_weights() const;
  // True when a_r = 0, i.e. X = P^{t-1} x P^r.
  bool is_product() const { return a_max() == 0; }

  std::string to_string() const;  // "X_d(a_1,...,a_r) over P^{t-1}"
  std::string literal() const;    // "r,t:a1,...,ar"

  friend bool operator==(const HKVariety&, const HKVariety&) = default;

 private:
  int r_;
  int t_;
  std::vector<int> a_;
};

struct LineBundleClass {
  long lambda = 0;
  long mu = 0;
  friend bool operator==(const LineBundleClass&, const LineBundleClass&) = default;
};

// P^n carrying O(twist); the terminal stratum of the restriction chain.
struct ProjectiveStratum {
  int n = 1;
  long twist = 0;
  friend bool operator==(const ProjectiveStratum&, const ProjectiveStratum&) = default;
};

struct Fan {
  // Fixed order: w_0, ..., w_{t-1}, e_0, ..., e_r in Z^{t-1} + Z^r.
  std::vector<std::vector<long>> rays;
  // Indices into rays; every cone has d generators.
  std::vector<std::vector<int>> maximal_cones;

  int ambient_dim() const { return rays.empty() ? 0 : static_cast<int>(rays.front().size()); }
  bool rays_primitive() const;
  // Every maximal cone spanned by a Z-basis (|det| = 1).
  bool is_smooth() const;
};

enum class PoleCase { Equal, LambdaDominates, MuDominates };

std::string to_string(PoleCase c);

struct ExponentData {
  mpq_class lambda_l;  // (r+1)/lambda
  mpq_class mu_l;      // ((r+1)a_r + t - |a|)/mu
  mpq_class a_l;       // max of the two
  int log_exponent = 0;  // b(L) - 1
  PoleCase pole_case = PoleCase::Equal;
};

Fan build_fan(const HKVariety& x);

// Class of the toric divisor attached to ray `index` (order as in Fan::rays).
LineBundleClass ray_divisor_class(const HKVariety& x, int index);

LineBundleClass anticanonical(const HKVariety& x);

inline bool is_big(const LineBundleClass& l) { return l.lambda > 0 && l.mu > 0; }

// The f-coefficient of -K_X: (r+1)a_r + t - |a|.
long anticanonical_mu(const HKVariety& x);

using Restriction = std::variant<std::pair<HKVariety, LineBundleClass>, ProjectiveStratum>;

// L|_F under F = X_{d-1}(a_1..a_{r-1}) (r >= 2) or F = P^{t-1} (r = 1).
Restriction restrict_to_F(const HKVariety& x, const LineBundleClass& l);

mpq_class alpha_constant(const HKVariety& x);

// Throws NotBig.
ExponentData exponents(const HKVariety& x, const LineBundleClass& l);

struct Stratum {
  enum class Kind { GoodOpen, Projective, Product };
  Kind kind = Kind::GoodOpen;
  // GoodOpen: U of `variety`. Product: all of `variety` (a_r = 0).
  std::optional<HKVariety> variety;
  // Projective: P^{projective.n} with O(projective.twist).
  ProjectiveStratum projective;
  LineBundleClass bundle;
  bool big = false;

  std::string label() const;
};

enum class DecompositionMode { Full, StopAtProduct };

// X = U_d(a) + U_{d-1}(a_1..a_{r-1}) + ... + P^{t-1}, each piece carrying the
// restricted class. StopAtProduct ends at P^{t-1} x P^j once a_1 = ... = a_j = 0.
std::vector<Stratum> decompose(const HKVariety& x, const LineBundleClass& l,
                               DecompositionMode mode = DecompositionMode::Full);

// mu_{L|F}: the f-exponent of the restricted class, used by the accumulation
// criterion. Empty when L|_F is not big.
std::optional<mpq_class> restricted_mu_exponent(const HKVariety& x, const LineBundleClass& l);

// True iff F (r = 1) or the good open subset of F (r >= 2) strongly
// accumulates more points than U. nullopt when L|_F is not big. Throws
// NotBig when L itself is not big.
std::optional<bool> strongly_accumulates(const HKVariety& x, const LineBundleClass& l);

}  // namespace hk
