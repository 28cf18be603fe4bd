#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

#include "scs/numeric.hpp"
#include "scs/repr.hpp"

namespace scs {

// Gamma function on C, relative accuracy ~1e-13 for |z| <= 200.
// Throws std::domain_error at nonpositive integers.
cplx gamma_complex(cplx z);
cplx lgamma_complex(cplx z);  // principal branch of log Gamma

// Bessel J of nonnegative integer order (order <= 64), x > 0.
double bessel_j(int order, double x);

// k-th positive zero of J_order, k = 1, 2, ...
double bessel_j_zero(int order, int k);

struct BesselKResult {
  cplx value{0, 0};
  bool underflow = false;  // |K| below representable range, value set to 0
};

// Modified Bessel K for order with Re >= 0 or purely imaginary order.
// Real output (zero imaginary part) for real or purely imaginary order.
BesselKResult bessel_k_checked(cplx order, double x);
cplx bessel_k(cplx order, double x);

// Classical Whittaker function W_{alpha,beta}(x), x > 0.
// alpha real (integer/half-integer use cases), beta real or purely imaginary.
cplx whittaker_w(double alpha, cplx beta, double x);

// Bessel kernel j_{ell-1/2}(y) = (-1)^ell 2 pi sqrt(y) J_{2 ell - 1}(4 pi sqrt(y)).
double bessel_kernel(int ell, double y);

// Parameters of a normalized Whittaker function ~W_{p,pi}.
struct WhittakerParams {
  int p = 0;
  ReprDescriptor repr;
  int sign = +1;  // sign of the argument u

  WhittakerParams() = default;
  WhittakerParams(int p_, ReprDescriptor r, int sign_ = +1)
      : p(p_), repr(std::move(r)), sign(sign_) {
    if (sign != 1 && sign != -1)
      throw std::invalid_argument("WhittakerParams sign must be +-1");
  }
  // True when the convention after the defining formula forces ~W = 0:
  // 1/2 +- nu + sgn(u) p a nonpositive integer.
  bool degenerate() const;
};

struct WhittakerNormValue {
  double value = 0;
  bool underflow = false;  // tail cutoff applied (|~W| < 1e-300 guaranteed)
};

// |~W_{p,pi}(u)| = |W_{sgn(u)p, nu}(|u|)| / |Gamma(1/2-nu+sgn(u)p) Gamma(1/2+nu+sgn(u)p)|^{1/2}.
// The phase factor is fixed to 1; only the modulus is ever consumed.
WhittakerNormValue whittaker_normalized_checked(const WhittakerParams& params, double u);
double whittaker_normalized(const WhittakerParams& params, double u);

}  // namespace scs
