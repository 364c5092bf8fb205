#include "hk/specfun.hpp"

#include <cmath>

#include "hk/errors.hpp"

namespace hk {

namespace {

// B_{2j} / (2j)! for j = 1..12.
constexpr Real kBernoulliOverFactorial[12] = {
    1.0L / 12.0L,
    -1.0L / 720.0L,
    1.0L / 30240.0L,
    -1.0L / 1209600.0L,
    1.0L / 47900160.0L,
    -691.0L / 1307674368000.0L,
    1.0L / 74724249600.0L,
    -3617.0L / 10670622842880000.0L,
    43867.0L / 5109094217170944000.0L,
    -174611.0L / 802857662698291200000.0L,
    77683.0L / 14101100039391805440000.0L,
    -236364091.0L / 1693824136731743669452800000.0L,
};

constexpr int kHead = 20;

}  // namespace

Real hurwitz_zeta(Real s, Real a) {
  if (!(s > 1)) throw DomainError("hurwitz_zeta needs s > 1");
  if (!(a > 0)) throw DomainError("hurwitz_zeta needs a > 0");
  Real head = 0;
  for (int k = 0; k < kHead; ++k) head += std::pow(static_cast<Real>(k) + a, -s);
  const Real x = static_cast<Real>(kHead) + a;
  Real tail = std::pow(x, 1 - s) / (s - 1) + std::pow(x, -s) / 2;
  // Term j: B_{2j}/(2j)! * s(s+1)...(s+2j-2) * x^{-s-2j+1}.
  Real rising = s;
  Real xpow = std::pow(x, -s - 1);
  const Real inv_x2 = 1 / (x * x);
  for (int j = 0; j < 12; ++j) {
    tail += kBernoulliOverFactorial[j] * rising * xpow;
    rising *= (s + 2 * j + 1) * (s + 2 * j + 2);
    xpow *= inv_x2;
  }
  return head + tail;
}

Real zeta(Real s) {
  if (!(s > 1)) throw DomainError("zeta needs s > 1");
  return hurwitz_zeta(s, 1);
}

namespace {

// Lanczos sum with g = 12.2252227365970611572265625 (17 terms), as a ratio
// of polynomials in z, lowest order first.
constexpr Real kLanczosG = 12.2252227365970611572265625L;
constexpr Real kLanczosNum[17] = {
    553681095419291969.2230556393350368550504L, 731918863887667017.2511276782146694632234L,
    453393234285807339.4627124634539085143364L, 174701893724452790.3546219631779712198035L,
    46866125995234723.82897281620357050883077L, 9281280675933215.169109622777099699054272L,
    1403600894156674.551057997617468721789536L, 165345984157572.7305349809894046783973837L,
    15333629842677.31531822808737907246817024L, 1123152927963.956626161137169462874517318L,
    64763127437.92329018717775593533620578237L, 2908830362.657527782848828237106640944457L,
    99764700.56999856729959383751710026787811L, 2525791.604886139959837791244686290089331L,
    44516.94034970167828580039370201346554872L, 488.0063567520005730476791712814838113252L,
    2.50662827463100050241576877135758834683L};
constexpr Real kLanczosDen[17] = {0.0L,          1307674368000.0L, 4339163001600.0L, 6165817614720.0L,
                                  5056995703824.0L, 2706813345600.0L, 1009672107080.0L, 272803210680.0L,
                                  54631129553.0L, 8207628000.0L,    928095740.0L,     78558480.0L,
                                  4899622.0L,     218400.0L,        6580.0L,          120.0L,
                                  1.0L};

Real lanczos_sum(Real z) {
  Real num = 0;
  Real den = 0;
  for (int i = 16; i >= 0; --i) {
    num = num * z + kLanczosNum[i];
    den = den * z + kLanczosDen[i];
  }
  return num / den;
}

}  // namespace

Real gamma_fn(Real s) {
  if (!(s > 0)) throw DomainError("gamma needs s > 0");
  if (s < 1) return gamma_fn(s + 1) / s;
  const Real zgh = s + kLanczosG - 0.5L;
  // Split the power to delay overflow for large s.
  const Real half = std::pow(zgh, (s - 0.5L) / 2);
  return lanczos_sum(s) * (half / std::exp(zgh)) * half;
}

Real L_minus4(Real s) {
  if (!(s > 1)) throw DomainError("L_minus4 needs s > 1");
  return std::pow(4.0L, -s) * (hurwitz_zeta(s, 0.25L) - hurwitz_zeta(s, 0.75L));
}

}  // namespace hk
