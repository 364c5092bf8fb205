#pragma once

// Leading constants of the point-counting asymptotics, together with the
// zeta-type functions they are built from.

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hk/geometry.hpp"
#include "hk/heights.hpp"
#include "hk/specfun.hpp"

namespace hk {

// Arithmetic invariants of a number field K. The builtin field is Q; for any
// other field the Dedekind zeta values (and, when predictions need them, the
// projective height zeta values) are read from sample tables.
struct FieldInvariants {
  int r1 = 1;
  int r2 = 0;
  long w = 2;
  long abs_disc = 1;
  Real regulator = 1;
  long class_number = 1;
  bool builtin_rationals = true;
  std::map<Real, Real> zeta_k_samples;
  std::map<std::pair<int, Real>, Real> zeta_p_samples;

  static FieldInvariants rationals();
  // key=value lines: r1, r2, w, absDisc, regulator, classNumber,
  // zetaK.<s>=<value>, zetaP.<m>.<s>=<value>. '#' starts a comment.
  // Throws ParseError.
  static FieldInvariants parse(std::string_view text);
  static FieldInvariants from_file(const std::string& path);

  int degree() const { return r1 + 2 * r2; }
  // zeta_K(s); throws DomainError when a non-builtin field has no sample at s.
  Real zeta_k(Real s) const;
};

Real xi_K(Real s, const FieldInvariants& inv);

// Z_{P^m}(s) = sum over P^m(Q) of H(P)^{-s}, by the closed forms
//   m = 1:  2 zeta(s/2) L_{-4}(s/2) / zeta(s)
//   m = 3:  4 (1 - 4^{1-s/2}) zeta(s/2) zeta(s/2 - 1) / zeta(s)
// which follow from the classical formulas for sums of two and four squares.
// Throws DomainError for other m or s <= m + 1.
Real zetaP_closed_form(int m, Real s);

// Epstein zeta E_k(s) = sum_{x in Z^k, x != 0} |x|^{-s}, s > k, by a smoothly
// truncated lattice sum whose complement is replaced by its integral. The
// discarded Poisson terms decay faster than any power of `radius`.
Real epstein_zeta(int k, Real s, int radius = 40);

// Z_{P^m}(s) = E_{m+1}(s) / (2 zeta(s)).
Real zetaP_lattice(int m, Real s);

struct ZetaSum {
  Real value = 0;       // direct partial sum
  Real tail_bound = 0;  // certified bound on the omitted tail
  Real h_max = 0;
  std::uint64_t points = 0;
};

// Direct sum over points with H <= H_max plus the bound
//   tail <= kappa s / (s - m - 1) H_max^{m+1-s},
// where N(P^m, H) <= kappa H^{m+1} with kappa = V_{m+1} (1 + sqrt(m+1)/2)^{m+1} / 2
// (every primitive vector of norm <= H owns a unit cube inside the ball of
// radius H + sqrt(m+1)/2, and +-x give the same point). H_max is the
// smallest value making the bound <= tol; TooCloseToPole is thrown when that
// would need more than `budget` points. m = 0 and m = -1 return 1 and 0.
ZetaSum zetaP_numeric(int m, Real s, Real tol, std::uint64_t budget = 30'000'000);

// The value used by predictions: conventions for m <= 0, closed forms or the
// lattice evaluator over Q, sample tables otherwise.
Real zetaP(int m, Real s, const FieldInvariants& inv);

struct AsymptoticPrediction {
  mpq_class a_l;        // exponent of B
  int log_exponent = 0;  // exponent of log B
  Real C = 0;
  std::string case_tag;  // EqualCase, LambdaDominates, MuDominates, Schanuel
  std::string source;    // Thm6.2, Thm6.3, Thm1.2, Schanuel

  // C B^a (log B)^b.
  Real main_term(Real bound) const;
};

// N(P^n, B) ~ C B^{n+1}.
AsymptoticPrediction schanuel_constant(int n, const FieldInvariants& inv);
// N(P^n, H^twist <= B) ~ C B^{(n+1)/twist}.
AsymptoticPrediction schanuel_twisted(int n, long twist, const FieldInvariants& inv);

// Good open subset when a_r > 0, whole variety when a_r = 0. Throws NotBig
// and TooCloseToPole.
AsymptoticPrediction predict(const HKVariety& x, const LineBundleClass& l, const FieldInvariants& inv);

// Prediction for the region actually counted by count_hk. For a_r = 0 the
// good open subset is the whole variety minus F, so when F grows at the same
// rate its constant is subtracted. Throws NotBig if the region's count is
// infinite.
AsymptoticPrediction predict_region(const HKVariety& x, const LineBundleClass& l, Region region,
                                    const FieldInvariants& inv);

struct HirzebruchRow {
  long lambda = 0;
  long mu = 0;
  AsymptoticPrediction prediction;
};

// U of X_2(1) for (lambda, mu) in {1,2,3}^2, lambda-major.
std::vector<HirzebruchRow> hirzebruch_table(const FieldInvariants& inv);

// X_3(a1,a2) with the anticanonical height, split as U + U' + F' where
// U' = U_2(a1) carries L = (3, 2 + 2a1 - a2) and F' = P^1 carries
// M = O(2 - a1 - a2).
struct ThreefoldStratum {
  std::string name;  // U, U', F'
  bool big = false;
  std::optional<AsymptoticPrediction> prediction;  // empty when the count is infinite
};

struct ThreefoldRow {
  std::string case_label;
  int a1 = 0;
  int a2 = 0;
  bool l_big = false;
  bool m_big = false;
  std::vector<ThreefoldStratum> strata;
  std::string dominant;                 // stratum with the largest finite growth
  std::vector<std::string> comparison;  // human-readable relations
};

ThreefoldRow threefold_row(int a1, int a2, const std::string& case_label, const FieldInvariants& inv);
// Representatives (0,0), (0,1), (1,2), (1,1), (0,2) of the five cases.
std::vector<ThreefoldRow> threefold_table(const FieldInvariants& inv);

}  // namespace hk
