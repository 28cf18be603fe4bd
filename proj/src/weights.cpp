#include "scs/weights.hpp"

#include <cmath>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace scs {

namespace {

constexpr int kMaxOrder = 80;
constexpr double kInf = std::numeric_limits<double>::infinity();

// d^j/dt^j exp(-1/(1-t^2)) = P_j(t) / (1-t^2)^{2j} * exp(-1/(1-t^2))
// with P_0 = 1 and P_{j+1} = (1-t^2)^2 P_j' + (4 j t (1-t^2) - 2t) P_j.
const std::vector<std::vector<double>>& bump_polys() {
  static std::vector<std::vector<double>> polys;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  if (!polys.empty()) return polys;
  polys.push_back({1.0});
  for (int j = 0; j < kMaxOrder; ++j) {
    const auto& p = polys[j];
    int deg = static_cast<int>(p.size()) - 1;
    std::vector<double> next(deg + 4, 0.0);
    for (int i = 0; i <= deg; ++i) {
      double c = p[i];
      if (i >= 1) {
        // derivative term i*c*t^{i-1} times (1 - 2t^2 + t^4)
        next[i - 1] += i * c;
        next[i + 1] -= 2.0 * i * c;
        next[i + 3] += i * c;
      }
      // (4 j t - 4 j t^3 - 2 t) * c t^i
      next[i + 1] += (4.0 * j - 2.0) * c;
      next[i + 3] -= 4.0 * j * c;
    }
    while (next.size() > 1 && next.back() == 0.0) next.pop_back();
    polys.push_back(std::move(next));
  }
  return polys;
}

double poly_eval(const std::vector<double>& p, double t) {
  double v = 0;
  for (size_t i = p.size(); i-- > 0;) v = v * t + p[i];
  return v;
}

cplx bump_deriv(double center, double width, double u, int order) {
  double t = (u - center) / width;
  if (std::abs(t) >= 1.0 - 1e-9) return 0;
  double s = 1.0 - t * t;
  double f = std::exp(-1.0 / s);
  if (order == 0) return f;
  const auto& p = bump_polys()[order];
  return poly_eval(p, t) * std::pow(s, -2.0 * order) * f *
         std::pow(width, -static_cast<double>(order));
}

// d^j/du^j [u^{k/2} e^{-z u}] expanded by Leibniz; exponents are half-integers
// so everything is tracked through the falling factorials of k/2.
cplx exp_family_deriv(int k, cplx z, double u, int order) {
  if (u <= 0) return 0;
  double half_k = 0.5 * k;
  cplx sum = 0;
  double binom = 1;  // C(order, i)
  double falling = 1;  // (k/2)(k/2-1)...(k/2-i+1)
  for (int i = 0; i <= order; ++i) {
    cplx term = binom * falling * std::pow(u, half_k - i) *
                std::pow(-z, static_cast<double>(order - i));
    sum += term;
    binom *= static_cast<double>(order - i) / (i + 1);
    falling *= half_k - i;
  }
  return sum * std::exp(-z * u);
}

// W = C_j(u) e^{-(a u + b/u)/2} with C_j a Laurent polynomial,
// C_{j+1} = C_j' + C_j (-a/2 + (b/2) u^{-2}).
cplx monomial_gauss_deriv(double a, double b, double u, int order) {
  if (u <= 0) return 0;
  std::map<int, double> c{{1, 1.0}};
  for (int j = 0; j < order; ++j) {
    std::map<int, double> next;
    for (auto [e, v] : c) {
      if (e != 0) next[e - 1] += e * v;
      next[e] += -0.5 * a * v;
      next[e - 2] += 0.5 * b * v;
    }
    c.swap(next);
  }
  double lau = std::log(u);
  Kahan<double> acc;
  for (auto [e, v] : c) acc.add(v * std::exp(e * lau));
  return acc.get() * std::exp(-0.5 * (a * u + b / u));
}

}  // namespace

WeightFunction WeightFunction::bump(double center, double width) {
  if (width <= 0) throw std::invalid_argument("bump: width > 0 required");
  if (center - width <= 0)
    throw std::invalid_argument("bump: support must stay inside (0, inf)");
  WeightFunction w;
  w.family = Family::Bump;
  w.center = center;
  w.width = width;
  w.support_lo = center - width;
  w.support_hi = center + width;
  return w;
}

WeightFunction WeightFunction::exp_family(int k, cplx z) {
  if (k < 1) throw std::invalid_argument("exp_family: k >= 1 required");
  if (z.real() <= 0) throw std::invalid_argument("exp_family: Re z > 0 required");
  WeightFunction w;
  w.family = Family::ExpFamily;
  w.k = k;
  w.z = z;
  w.support_lo = 0;
  w.support_hi = kInf;
  return w;
}

WeightFunction WeightFunction::monomial_gauss(double a, double b) {
  if (a <= 0 || b <= 0)
    throw std::invalid_argument("monomial_gauss: a, b > 0 required");
  WeightFunction w;
  w.family = Family::MonomialGauss;
  w.a = a;
  w.b = b;
  w.support_lo = 0;
  w.support_hi = kInf;
  return w;
}

WeightFunction WeightFunction::reflected() const {
  WeightFunction w = *this;
  w.mirrored = !mirrored;
  w.support_lo = -support_hi;
  w.support_hi = -support_lo;
  return w;
}

WeightFunction WeightFunction::scaled(double c) const {
  WeightFunction w = *this;
  w.amplitude *= c;
  return w;
}

cplx WeightFunction::derivative(double u, int order) const {
  if (order < 0 || order > kMaxOrder)
    throw std::invalid_argument("WeightFunction: derivative order 0..80");
  double sgn = amplitude;
  if (mirrored) {
    u = -u;
    if (order % 2) sgn = -sgn;
  }
  cplx v;
  switch (family) {
    case Family::Bump:
      v = bump_deriv(center, width, u, order);
      break;
    case Family::ExpFamily:
      v = exp_family_deriv(k, z, u, order);
      break;
    case Family::MonomialGauss:
      v = monomial_gauss_deriv(a, b, u, order);
      break;
  }
  return sgn * v;
}

}  // namespace scs
