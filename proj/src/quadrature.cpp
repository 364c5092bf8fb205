#include "hk/quadrature.hpp"

#include <cmath>
#include <limits>

#include "hk/errors.hpp"

namespace hk {

namespace {

constexpr Real kXgk[8] = {0.991455371120812639206854697526329L, 0.949107912342758524526189684047851L,
                          0.864864423359769072789712788640926L, 0.741531185599394439863864773280788L,
                          0.586087235467691130294144845693013L, 0.405845151377397166906606412076961L,
                          0.207784955007898467600689403773245L, 0.0L};
constexpr Real kWgk[8] = {0.022935322010529224963732008058970L, 0.063092092629978553290700663189204L,
                          0.104790010322250183839876322541518L, 0.140653259715525918745189590510238L,
                          0.169004726639267902826583426598550L, 0.190350578064785409913256402421014L,
                          0.204432940075298892414161999234649L, 0.209482141084727828012999174891714L};
// Gauss weights for the nodes kXgk[1], kXgk[3], kXgk[5], kXgk[7].
constexpr Real kWg[4] = {0.129484966168869693270611432679082L, 0.279705391489276667901467771423780L,
                         0.381830050505118944950369775488975L, 0.417959183673469387755102040816327L};

struct Piece {
  Real kronrod;
  Real gauss;
};

Piece rule(const std::function<Real(Real)>& f, Real a, Real b) {
  const Real c = (a + b) / 2;
  const Real h = (b - a) / 2;
  Real k = 0;
  Real g = 0;
  for (int i = 0; i < 8; ++i) {
    const Real x = kXgk[i] * h;
    const Real v = i == 7 ? f(c) : f(c - x) + f(c + x);
    k += kWgk[i] * v;
    if (i % 2 == 1) g += kWg[i / 2] * v;
  }
  return {k * h, g * h};
}

void adapt(const std::function<Real(Real)>& f, Real a, Real b, Real tol, int depth, int max_depth,
           QuadResult& out) {
  const Piece p = rule(f, a, b);
  out.evaluations += 15;
  const Real err = std::fabs(p.kronrod - p.gauss);
  // Halving tol on every split can push it below the rounding noise of a
  // piece, so a piece is also accepted once its error is at that level.
  const Real noise = 64 * std::numeric_limits<Real>::epsilon() * std::fabs(p.kronrod);
  if (err <= tol || err <= noise || (b - a) <= std::fabs(a + b) * 1e-17L) {
    out.value += p.kronrod;
    out.error += err;
    return;
  }
  if (depth >= max_depth)
    throw QuadratureFailure("adaptive quadrature did not converge on [" + std::to_string(static_cast<double>(a)) +
                            ", " + std::to_string(static_cast<double>(b)) + "]");
  const Real m = (a + b) / 2;
  adapt(f, a, m, tol / 2, depth + 1, max_depth, out);
  adapt(f, m, b, tol / 2, depth + 1, max_depth, out);
}

}  // namespace

QuadResult integrate(const std::function<Real(Real)>& f, Real a, Real b, Real abs_tol, int max_depth) {
  QuadResult out;
  if (a == b) return out;
  if (a > b) {
    out = integrate(f, b, a, abs_tol, max_depth);
    out.value = -out.value;
    return out;
  }
  adapt(f, a, b, abs_tol, 0, max_depth, out);
  return out;
}

}  // namespace hk
