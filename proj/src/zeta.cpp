#include "scs/zeta.hpp"

#include <cmath>
#include <stdexcept>

#include "scs/special.hpp"

namespace scs {

// B_2, B_4, ..., B_24
static const double kBernoulli[] = {
    1.0 / 6,       -1.0 / 30,       1.0 / 42,          -1.0 / 30,
    5.0 / 66,      -691.0 / 2730,   7.0 / 6,           -3617.0 / 510,
    43867.0 / 798, -174611.0 / 330, 854513.0 / 138,    -236364091.0 / 2730,
};

static cplx zeta_em(cplx s) {
  const int N = 40;
  Kahan<cplx> acc;
  for (int n = 1; n < N; ++n)
    acc.add(std::exp(-s * std::log(static_cast<double>(n))));
  cplx nms = std::exp(-s * std::log(static_cast<double>(N)));  // N^{-s}
  acc.add(nms * static_cast<double>(N) / (s - 1.0));
  acc.add(0.5 * nms);
  // Sum_k B_{2k}/(2k)! * s(s+1)...(s+2k-2) * N^{-s-2k+1}
  cplx rising = s;            // s(s+1)...(s+2k-2)
  cplx npow = nms / static_cast<double>(N);  // N^{-s-2k+1}
  double fact = 2.0;          // (2k)!
  for (int k = 1; k <= 12; ++k) {
    acc.add(kBernoulli[k - 1] / fact * rising * npow);
    rising *= (s + static_cast<double>(2 * k - 1)) * (s + static_cast<double>(2 * k));
    npow /= static_cast<double>(N) * N;
    fact *= (2 * k + 1) * (2 * k + 2);
  }
  return acc.get();
}

cplx zeta(cplx s) {
  if (std::abs(s - 1.0) < 1e-12)
    throw std::domain_error("zeta: pole at s = 1");
  // the reflection below would evaluate at the pole; expand around 0 instead
  if (std::abs(s) < 1e-10)
    return cplx(-0.5, 0) - s * 0.91893853320467274178;  // log(2 pi)/2
  if (s.real() >= 0.5) return zeta_em(s);
  // zeta(s) = 2^s pi^{s-1} sin(pi s / 2) Gamma(1-s) zeta(1-s)
  cplx chi = std::pow(cplx(2, 0), s) * std::pow(cplx(PI, 0), s - 1.0) *
             std::sin(0.5 * PI * s) * gamma_complex(1.0 - s);
  return chi * zeta_em(1.0 - s);
}

cplx zeta_completed(cplx s) {
  return std::pow(cplx(PI, 0), -0.5 * s) * gamma_complex(0.5 * s) * zeta(s);
}

}  // namespace scs
