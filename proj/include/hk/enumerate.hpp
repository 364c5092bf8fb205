#pragma once

// Exact enumeration and counting of rational points of bounded height.
//
// Projective space: canonical primitive vectors x in Z^{n+1} with
// sum x_i^2 <= B^2. Hirzebruch-Kleinschmidt varieties: for each base point Q
// the fiber points form the primitive vectors inside the integer ellipsoid
//
//   sum_i Nq^{b_max - b_i} y_i^2 <= S_max(Nq, B),
//
// where S_max is the exact integer threshold obtained from height_le. The
// fiber count depends on Q only through Nq, so base points are grouped by
// norm before the (parallel) fiber walk.

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <span>
#include <variant>
#include <vector>

#include "hk/geometry.hpp"
#include "hk/heights.hpp"

namespace hk {

using i128 = __int128;

struct ProjectiveTarget {
  int n = 1;
  long twist = 1;  // counts H^twist <= B
};

using CountTarget = std::variant<HKVariety, ProjectiveTarget>;

struct CountRequest {
  CountTarget target = ProjectiveTarget{};
  LineBundleClass bundle;  // ignored for ProjectiveTarget
  mpq_class bound = 1;
  Region region = Region::GoodOpen;  // ProjectiveTarget: must be Whole
  int threads = 1;
};

struct CountResult {
  mpz_class count = 0;
  double elapsed = 0.0;          // seconds
  std::uint64_t points_visited = 0;  // walker nodes, diagnostics only
};

// Which fiber vectors a walk accepts.
enum class FiberMode {
  Any,         // every projective point
  FirstNonzero,  // y_0 != 0 (the good open subset)
  FirstZero    // y_0 == 0 (the subbundle F)
};

// Canonical primitive y with sum weights[i] y_i^2 <= limit, weights > 0.
struct WalkStats {
  i128 count = 0;
  std::uint64_t nodes = 0;
};
WalkStats count_primitive_in_ellipsoid(std::span<const i128> weights, i128 limit, FiberMode mode);

using IntVectorVisitor = std::function<void(std::span<const long>)>;
void visit_primitive_in_ellipsoid(std::span<const i128> weights, i128 limit, FiberMode mode,
                                  const IntVectorVisitor& visit);

// Number of canonical primitive vectors in Z^{n+1} with sum x_i^2 <= max_norm.
mpz_class count_projective_norm(int n, const mpz_class& max_norm);

// floor(B^2) and the norm bound for H^twist <= B, i.e. Nq <= floor(B^2)^{1/twist}.
mpz_class norm_bound(const mpq_class& bound, long twist);

void enum_projective(int n, const mpq_class& bound, const std::function<void(const ProjectivePoint&)>& visit);
mpz_class count_projective(int n, const mpq_class& bound);

// Independent route: (1/2) sum_d mu(d) #{x in Z^{n+1} \ 0 : |x|^2 <= B^2/d^2}.
mpz_class count_projective_moebius(int n, const mpq_class& bound);

// Throws NotBig when the region's count is infinite.
CountResult count_hk(const CountRequest& req);

// Points of X with H_L <= B lying in `region`, F-points obtained through the
// restriction chain and mapped back. Each point is visited once.
void enumerate_hk(const HKVariety& x, const LineBundleClass& l, const mpq_class& bound, Region region,
                  const std::function<void(const HKRationalPoint&)>& visit);

// Direct enumeration of all fiber vectors in the requested mode, without the
// restriction reduction. Used by verification suites.
mpz_class count_hk_direct(const HKVariety& x, const LineBundleClass& l, const mpq_class& bound,
                          FiberMode mode);

struct SweepRow {
  mpq_class bound;
  mpz_class count;
  double predicted = 0.0;
  double ratio = 0.0;
  double elapsed = 0.0;
};

// predicted(B) supplies the asymptotic main term; may be empty.
std::vector<SweepRow> sweep(const CountRequest& req, std::span<const mpq_class> grid,
                            const std::function<double(const mpq_class&)>& predicted);

struct PowerFit {
  double slope = 0.0;        // exponent a in N ~ C B^a
  double coefficient = 0.0;  // C
};

// Least squares on (log B, log N). Throws DegenerateFit.
PowerFit fit_power_law(std::span<const double> bounds, std::span<const double> counts);

struct LogFit {
  double log_coefficient = 0.0;  // C in N ~ C B^a log B + C2 B^a
  double constant = 0.0;         // C2
};

// Least squares on N / B^a = C log B + C2 with a fixed. Throws DegenerateFit.
LogFit fit_log_power(std::span<const double> bounds, std::span<const double> counts, double exponent);

}  // namespace hk
