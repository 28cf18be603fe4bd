#include "scs/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <string>

#include "scs/special.hpp"

namespace scs {

SmoothCutoff::SmoothCutoff(int q_) : q(q_) {
  if (q < 1) throw std::invalid_argument("SmoothCutoff: q >= 1 required");
}

double SmoothCutoff::operator()(double t) const {
  if (t <= 0 || t >= 1) return 0;
  return std::pow(t * (1 - t), q);
}

int default_q(int c) {
  if (c < 0) throw std::invalid_argument("default_q: c >= 0 required");
  return 21 + 4 * c;
}

cplx g_tilde(cplx z, int q) {
  if (q < 1) throw std::invalid_argument("g_tilde: q >= 1 required");
  SmoothCutoff G(q);
  // 16-node panels with width ~10/|z| keep the e^{zt} factor resolved to
  // roundoff throughout |z| <= 1e3
  int panels = std::max(6, static_cast<int>(std::ceil(std::abs(z) / 8.0)));
  return integrate_gl([&](double t) { return G(t) * std::exp(z * t); }, 0.0,
                      1.0, 16, panels);
}

double g_tilde_decay_constant(int q) {
  static std::map<int, double> cache;
  static std::mutex mu;
  {
    std::lock_guard<std::mutex> lk(mu);
    auto it = cache.find(q);
    if (it != cache.end()) return it->second;
  }
  // sweep Re z = 1 up to |Im z| = 1e3 on a log ladder; the sup stabilizes
  // well before the top since |z|^{q+1}|g_tilde| tends to a constant
  double sup = std::abs(g_tilde(cplx(1, 0), q));
  for (int i = 0; i <= 400; ++i) {
    double y = std::pow(10.0, 3.0 * i / 400.0);
    cplx z(1, y);
    sup = std::max(sup, std::pow(std::abs(z), q + 1) * std::abs(g_tilde(z, q)));
  }
  double c = 2.0 * sup;  // safety margin over the sampled sup
  std::lock_guard<std::mutex> lk(mu);
  cache[q] = c;
  return c;
}

cplx g_hat(cplx s, int q) {
  if (q < 1) throw std::invalid_argument("g_hat: q >= 1 required");
  if (s.real() <= 1.0 - q)
    throw std::domain_error("g_hat: pole region, Re s > 1 - q required");
  return std::exp(lgamma_complex(s + cplx(q - 1, 0)) + std::lgamma(q + 1.0) -
                  lgamma_complex(s + cplx(2 * q, 0)));
}

cplx w_k(double t, cplx z, int k) {
  if (k < 1) throw std::invalid_argument("w_k: k >= 1 required");
  if (t <= 0) return 0;
  return std::pow(t, 0.5 * k) * std::exp(-z * t);
}

bool separating_kernel_admissible(int k, int c) {
  return k > 60 + 12 * c;
}

SplitReport split_identity_check(std::int64_t m, std::int64_t n, double Y, int k, int q,
                      const ContourSpec& contour) {
  if (m < 1 || n < 1)
    throw std::invalid_argument("split_identity_check: m, n >= 1 required");
  if (Y <= 0) throw std::invalid_argument("split_identity_check: Y > 0 required");
  if (k < 1 || q < 1)
    throw std::invalid_argument("split_identity_check: k, q >= 1 required");
  if (contour.panel_width <= 0 || contour.nodes_per_panel < 2 ||
      contour.tail_target <= 0)
    throw std::invalid_argument("split_identity_check: malformed contour spec");

  SmoothCutoff G(q);
  double x = (m + n) / Y;
  double scale = std::pow(m * n / (Y * Y), 0.5 * k);

  SplitReport rep;
  rep.lhs = scale * G(x);

  // on Re z = 1 the kernel product has constant modulus scale * e^{-x}, so
  // the discarded tail is below amp/pi * int_Z^inf C y^{-q-1} dy
  double amp = scale * std::exp(-x);
  double C = g_tilde_decay_constant(q);
  auto tail_at = [&](double Z) { return amp * C * std::pow(Z, -q) / (PI * q); };
  double z_need = std::max(
      8.0,
      1.02 * std::pow(amp * C / (PI * q * contour.tail_target), 1.0 / q));
  double Z = contour.z_max > 0 ? contour.z_max : z_need;
  if (tail_at(Z) > contour.tail_target)
    throw ContourTailError(z_need,
                           "split_identity_check: contour tail above target, need z_max "
                           ">= " + std::to_string(z_need));
  rep.z_max = Z;
  rep.tail_bound = tail_at(Z);

  double tm = m / Y, tn = n / Y;
  int panels =
      std::max(4, static_cast<int>(std::ceil(2 * Z / contour.panel_width)));
  cplx integral = integrate_gl(
      [&](double y) {
        cplx z(1, y);
        // kernel product first: commutative, so m <-> n is bitwise symmetric
        cplx wp = w_k(tm, z, k) * w_k(tn, z, k);
        return g_tilde(z, q) * wp;
      },
      -Z, Z, contour.nodes_per_panel, panels);
  rep.rhs = integral / TWO_PI;  // dz = i dy cancels the i in 1/(2 pi i)
  rep.residual = std::abs(cplx(rep.lhs, 0) - rep.rhs);
  return rep;
}

}  // namespace scs
