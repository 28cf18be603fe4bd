#include "scs/special.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

namespace scs {

// ---------------------------------------------------------------------------
// Gamma
// ---------------------------------------------------------------------------

// Stirling coefficients B_{2n} / (2n (2n-1)).
static const double kStirling[] = {
    1.0 / 12,        -1.0 / 360,       1.0 / 1260,      -1.0 / 1680,
    1.0 / 1188,      -691.0 / 360360,  1.0 / 156,       -3617.0 / 122400,
    43867.0 / 244188, -174611.0 / 125400,
};

static bool is_nonpositive_integer(cplx z) {
  if (z.imag() != 0) return false;
  double r = std::round(z.real());
  return r <= 0 && std::abs(z.real() - r) < 1e-13;
}

cplx lgamma_complex(cplx z) {
  if (is_nonpositive_integer(z))
    throw std::domain_error("lgamma_complex: pole at nonpositive integer");
  if (z.real() < 0.5) {
    // reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z)
    cplx s = std::sin(PI * z);
    return std::log(cplx(PI)) - std::log(s) - lgamma_complex(1.0 - z);
  }
  cplx shift = 0;
  cplx w = z;
  while (std::abs(w) < 12.0) {
    shift -= std::log(w);
    w += 1.0;
  }
  cplx lg = (w - 0.5) * std::log(w) - w + 0.5 * std::log(2 * PI);
  cplx winv = 1.0 / w, wp = winv;
  for (double c : kStirling) {
    lg += c * wp;
    wp *= winv * winv;
  }
  return lg + shift;
}

cplx gamma_complex(cplx z) { return std::exp(lgamma_complex(z)); }

// ---------------------------------------------------------------------------
// Bessel J (integer order)
// ---------------------------------------------------------------------------

static double bessel_j_series(int n, double x) {
  // power series; safe for x <= ~12 (cancellation stays below ~e^12 * eps)
  double xh = 0.5 * x;
  double term = 1.0;
  for (int k = 1; k <= n; ++k) term *= xh / k;
  Kahan<double> acc;
  acc.add(term);
  double x2 = xh * xh;
  for (int k = 1; k < 200; ++k) {
    term *= -x2 / (static_cast<double>(k) * (n + k));
    acc.add(term);
    if (std::abs(term) < 1e-18 * (std::abs(acc.get()) + 1e-30)) break;
  }
  return acc.get();
}

static double bessel_j_miller(int n, double x) {
  // backward recurrence with normalization J_0 + 2 sum J_{2k} = 1
  int start = static_cast<int>(std::max<double>(n, x) +
                               12 * std::cbrt(std::max<double>(x, 1)) + 30);
  if (start % 2) ++start;
  std::vector<double> vals(start + 1);
  double jp = 0.0, j = 1e-300;
  vals[start] = j;
  for (int k = start; k >= 1; --k) {
    double jm = (2.0 * k / x) * j - jp;
    jp = j;
    j = jm;
    vals[k - 1] = j;
    if (std::abs(j) > 1e250) {
      j *= 1e-250;
      jp *= 1e-250;
      for (int m = k - 1; m <= start; ++m) vals[m] *= 1e-250;
    }
  }
  Kahan<double> s;
  s.add(vals[0]);
  for (int k = 2; k <= start; k += 2) s.add(2 * vals[k]);
  return vals[n] / s.get();
}

double bessel_j(int order, double x) {
  if (order < 0 || order > 64)
    throw std::domain_error("bessel_j: order must be in [0, 64]");
  if (!(x > 0)) throw std::domain_error("bessel_j: x must be positive");
  if (x <= 12.0) return bessel_j_series(order, x);
  return bessel_j_miller(order, x);
}

double bessel_j_zero(int order, int k) {
  static std::map<int, std::vector<double>> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto& zeros = cache[order];
  // first zero of J_n lies above n; scan upward from there
  double x = zeros.empty() ? static_cast<double>(order) : zeros.back();
  while (static_cast<int>(zeros.size()) < k) {
    // scan for a sign change, then bisect
    double step = 0.5;
    double a = x + 0.05, fa = bessel_j(order, a);
    while (true) {
      double b = a + step, fb = bessel_j(order, b);
      if (fa * fb < 0) {
        for (int it = 0; it < 80; ++it) {
          double m = 0.5 * (a + b), fm = bessel_j(order, m);
          if (fa * fm <= 0) {
            b = m;
            fb = fm;
          } else {
            a = m;
            fa = fm;
          }
          if (b - a < 1e-13 * b) break;
        }
        x = 0.5 * (a + b);
        zeros.push_back(x);
        break;
      }
      a = b;
      fa = fb;
    }
  }
  return zeros[k - 1];
}

double bessel_kernel(int ell, double y) {
  if (y <= 0) throw std::domain_error("bessel_kernel: y must be positive");
  double sign = (ell % 2 == 0) ? 1.0 : -1.0;
  return sign * TWO_PI * std::sqrt(y) * bessel_j(2 * ell - 1, 4 * PI * std::sqrt(y));
}

// ---------------------------------------------------------------------------
// Bessel K
// ---------------------------------------------------------------------------

// integral representation int_0^inf exp(-x cosh t) cosh(nu t) dt
static cplx bessel_k_integral(cplx nu, double x, double h_scale) {
  double sigma = std::max(nu.real(), 0.0);
  double mu = std::abs(nu.imag());
  // truncation: x cosh T - sigma T > 760
  double T = std::acosh(std::max((760.0 + 40.0 * sigma) / x, 2.0)) + 1.0;
  double h = std::min(0.2, TWO_PI / (mu + 30.0)) * h_scale;
  long n = static_cast<long>(T / h) + 1;
  Kahan<cplx> acc;
  acc.add(cplx(0.5 * std::exp(-x), 0));  // t = 0 endpoint, cosh(0) = 1
  for (long k = 1; k <= n; ++k) {
    double t = k * h;
    double e = -x * std::cosh(t);
    if (e < -745) break;
    acc.add(std::exp(e) * std::cosh(nu * t));
  }
  return acc.get() * h;
}

// K_{i mu}(x) = -pi Im I_{i mu}(x) / sinh(pi mu), via the I series.
static double bessel_k_imag_series(double mu, double x) {
  cplx inv_gamma = std::exp(-lgamma_complex(cplx(1.0, mu)));
  double x2 = 0.25 * x * x;
  cplx term = inv_gamma;  // k = 0 value of (x^2/4)^k / (k! Gamma(k+1+i mu))
  Kahan<cplx> acc;
  acc.add(term);
  for (int k = 1; k < 400; ++k) {
    term *= x2 / (static_cast<double>(k) * cplx(k, mu));
    acc.add(term);
    if (std::abs(term) < 1e-20 * std::abs(acc.get())) break;
  }
  cplx series = acc.get();
  cplx iiu = std::pow(cplx(0.5 * x, 0), cplx(0, mu)) * series;
  return -PI * iiu.imag() / std::sinh(PI * mu);
}

BesselKResult bessel_k_checked(cplx order, double x) {
  if (!(x > 0)) throw std::domain_error("bessel_k: x must be positive");
  bool imag_order = std::abs(order.real()) < 1e-14;
  if (!imag_order && order.real() < 0)
    throw std::domain_error("bessel_k: need Re order >= 0 or purely imaginary");
  if (std::abs(order.imag()) > 50)
    throw std::domain_error("bessel_k: |Im order| must be <= 50");
  BesselKResult res;
  if (x > 740) {  // e^{-x} below range along the whole integrand
    res.underflow = true;
    return res;
  }
  double mu = std::abs(order.imag());
  if (imag_order && mu >= 0.5 && x < std::max(8.0, mu)) {
    res.value = cplx(bessel_k_imag_series(mu, x), 0);
    return res;
  }
  cplx v = bessel_k_integral(order, x, 1.0);
  if (imag_order || order.imag() == 0) v = cplx(v.real(), 0);
  res.value = v;
  return res;
}

cplx bessel_k(cplx order, double x) { return bessel_k_checked(order, x).value; }

// ---------------------------------------------------------------------------
// Whittaker W
// ---------------------------------------------------------------------------

// generalized Laguerre L_n^{(a)}(x) by three-term recurrence
static double laguerre(int n, double a, double x) {
  if (n == 0) return 1.0;
  double l0 = 1.0, l1 = 1.0 + a - x;
  for (int k = 1; k < n; ++k) {
    double l2 = ((2 * k + 1 + a - x) * l1 - (k + a) * l0) / (k + 1);
    l0 = l1;
    l1 = l2;
  }
  return l1;
}

// terminating case: alpha - beta - 1/2 = n >= 0 integer (beta real)
// W_{beta+1/2+n, beta}(x) = (-1)^n n! e^{-x/2} x^{beta+1/2} L_n^{(2 beta)}(x)
static cplx whittaker_w_terminating(int n, double beta, double x) {
  double lg = std::lgamma(n + 1.0);
  double sign = (n % 2 == 0) ? 1.0 : -1.0;
  double val = sign * std::exp(lg - 0.5 * x + (beta + 0.5) * std::log(x)) *
               laguerre(n, 2 * beta, x);
  return cplx(val, 0);
}

namespace detail {

// W_{alpha,beta}(x) = e^{-x/2} x^{beta+1/2} U(a, b, x),
// a = beta - alpha + 1/2, b = 1 + 2 beta, with
// U(a,b,x) = (1/Gamma(a)) int_0^inf e^{-x t} t^{a-1} (1+t)^{b-a-1} dt, Re a > 0.
// The ray is rotated into the upper half plane when Im beta != 0 to kill the
// oscillatory cancellation from t^{i mu} (1+t)^{i mu}.
cplx whittaker_w_quad(double alpha, cplx beta, double x, double h_scale) {
  cplx a = beta - alpha + 0.5;
  cplx bma1 = beta + alpha - 0.5;  // b - a - 1
  if (a.real() <= 0)
    throw std::domain_error("whittaker_w: integral representation needs Re(beta-alpha+1/2) > 0");
  double mu = std::abs(beta.imag());
  // The value scale is ~e^{-pi mu} while a ray at angle theta has envelope
  // ~e^{-mu theta}, so theta must approach pi/2 as mu grows to keep the
  // cancellation within the 64-bit mantissa of the accumulator.  Smaller
  // theta is cheaper: the aliasing error of the trapezoid in the e^{-xt}
  // tail behaves like e^{-2 pi cot(theta)/h}.
  double theta = 0.0;
  if (mu > 0.5) theta = std::clamp(PI - 16.0 / mu, 1.2, 1.45);
  double c = std::cos(theta);
  cplx ray(c, std::sin(theta));  // e^{i theta}

  // truncation in w = log r, cutting where the envelope is below
  // e^{-45} times the value scale e^{-mu (pi - theta)} relative to the peak
  double pw = std::max(a.real() + bma1.real(), 0.5);
  double drop = 45.0 + mu * (PI - theta);
  double w_lo = -drop / std::max(a.real(), 0.5);
  double r_hi = drop;
  for (int it = 0; it < 30; ++it)
    r_hi = (drop + pw * std::log(r_hi + 2.0)) / (x * c);
  double w_hi = std::log(r_hi) + 0.5;
  double h = std::min({0.035, 0.6 / (1.0 + mu + std::abs(alpha)),
                       0.24 * c / std::sin(theta + 1e-12)}) *
             h_scale;

  long n = static_cast<long>((w_hi - w_lo) / h) + 1;
  // The rotated integrand still cancels by a factor up to ~e^{mu pi/2};
  // 64-bit mantissa accumulation keeps the roundoff floor below 1e-9.
  using cplxl = std::complex<long double>;
  cplxl al(a.real(), a.imag()), bl(bma1.real(), bma1.imag());
  cplxl rayl(ray.real(), ray.imag());
  cplxl acc(0, 0);
  for (long k = 0; k <= n; ++k) {
    long double w = w_lo + k * static_cast<long double>(h);
    long double r = std::exp(w);
    cplxl t = r * rayl;
    // in w = log r coordinates: t^{a-1} dt = t^a dw along the ray,
    // and log t = w + i theta exactly
    cplxl lg = -static_cast<long double>(x) * t + al * cplxl(w, theta) +
               bl * std::log(static_cast<long double>(1) + t);
    if (lg.real() < -760) continue;
    acc += std::exp(lg);
  }
  cplx sum(static_cast<double>(acc.real()), static_cast<double>(acc.imag()));
  cplx u = sum * h * std::exp(-lgamma_complex(a));
  return std::exp(cplx(-0.5 * x)) * std::pow(cplx(x, 0), beta + 0.5) * u;
}

}  // namespace detail

cplx whittaker_w(double alpha, cplx beta, double x) {
  if (!(x > 0)) throw std::domain_error("whittaker_w: x must be positive");
  // terminating branch (discrete-series family)
  if (std::abs(beta.imag()) < 1e-14) {
    double nd = alpha - beta.real() - 0.5;
    double nr = std::round(nd);
    if (nr >= -0.5 && std::abs(nd - nr) < 1e-9 && nr >= 0)
      return whittaker_w_terminating(static_cast<int>(nr), beta.real(), x);
  }
  cplx a = beta - alpha + 0.5;
  if (a.real() > 0) return detail::whittaker_w_quad(alpha, beta, x, 1.0);
  // climb in alpha from a valid base:
  // W_{k+1} = (x - 2k) W_k - ((k-1/2)^2 - beta^2) W_{k-1}
  double base = alpha;
  while ((beta - base + 0.5).real() <= 0) base -= 1.0;
  cplx wkm1 = detail::whittaker_w_quad(base - 1.0, beta, x, 1.0);
  cplx wk = detail::whittaker_w_quad(base, beta, x, 1.0);
  double kk = base;
  while (kk < alpha - 0.5) {
    cplx wk1 = (x - 2.0 * kk) * wk - ((kk - 0.5) * (kk - 0.5) - beta * beta) * wkm1;
    wkm1 = wk;
    wk = wk1;
    kk += 1.0;
  }
  return wk;
}

// ---------------------------------------------------------------------------
// Normalized Whittaker functions
// ---------------------------------------------------------------------------

bool WhittakerParams::degenerate() const {
  int m = sign * p;
  if (repr.is_discrete()) {
    // 1/2 - nu + m = 1 - ell + m nonpositive integer iff m <= ell - 1
    return m <= repr.ell - 1;
  }
  return false;  // nu purely imaginary (nonzero or zero): never integral
}

WhittakerNormValue whittaker_normalized_checked(const WhittakerParams& params,
                                               double u) {
  if (u == 0) throw std::domain_error("whittaker_normalized: u must be nonzero");
  WhittakerNormValue out;
  int m = (u > 0 ? 1 : -1) * params.p;
  const ReprDescriptor& rep = params.repr;
  WhittakerParams eff(params.p, rep, u > 0 ? +1 : -1);
  if (eff.degenerate()) return out;  // exactly zero

  double au = std::abs(u);
  double y0 = std::abs(params.p) + std::abs(rep.nu) + 1.0;
  // large-|u| cutoff from the exponential-decay envelope
  double log_bound = 0.5 * std::log(au) -
                     (1.0 + rep.nu.real()) * std::log(au / y0) - au / y0;
  if (au > 4 * y0 && log_bound < std::log(1e-300)) {
    out.underflow = true;
    return out;
  }

  cplx nu = rep.nu;
  double log_norm;  // log |Gamma(1/2-nu+m) Gamma(1/2+nu+m)|^{1/2}
  if (rep.is_discrete()) {
    // Gamma(m - ell + 1) Gamma(m + ell), both positive integers here
    log_norm = 0.5 * (std::lgamma(m - rep.ell + 1.0) + std::lgamma(m + rep.ell + 0.0));
  } else {
    log_norm = 0.5 * (lgamma_complex(0.5 - nu + static_cast<double>(m)).real() +
                      lgamma_complex(0.5 + nu + static_cast<double>(m)).real());
  }
  cplx w = whittaker_w(m, nu, au);
  out.value = std::abs(w) * std::exp(-log_norm);
  return out;
}

double whittaker_normalized(const WhittakerParams& params, double u) {
  return whittaker_normalized_checked(params, u).value;
}

}  // namespace scs
