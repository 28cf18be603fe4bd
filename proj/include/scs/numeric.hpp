#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace scs {

using cplx = std::complex<double>;

inline constexpr double PI = 3.141592653589793238462643383279502884;
inline constexpr double TWO_PI = 2.0 * PI;

// Compensated (Kahan-Neumaier) accumulator.  Sums that mix signs with heavy
// cancellation are the norm here, so this is used everywhere a long sum is
// formed.
template <class T>
struct Kahan {
  T sum{};
  T comp{};
  void add(T v) {
    T t = sum + v;
    if (std::abs(sum) >= std::abs(v))
      comp += (sum - t) + v;
    else
      comp += (v - t) + sum;
    sum = t;
  }
  T get() const { return sum + comp; }
};

template <>
struct Kahan<cplx> {
  Kahan<double> re, im;
  void add(cplx v) {
    re.add(v.real());
    im.add(v.imag());
  }
  cplx get() const { return {re.get(), im.get()}; }
};

// Gauss-Legendre nodes/weights on [-1,1], cached per order.
const std::pair<std::vector<double>, std::vector<double>>& gl_rule(int n);

// Composite Gauss-Legendre over [a,b] with `panels` equal panels of order n.
template <class F>
auto integrate_gl(F&& f, double a, double b, int n, int panels = 1)
    -> decltype(f(a)) {
  const auto& [xs, ws] = gl_rule(n);
  Kahan<decltype(f(a))> acc;
  double w = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    double lo = a + p * w;
    double c = 0.5 * (2 * lo + w), h = 0.5 * w;
    for (size_t i = 0; i < xs.size(); ++i) {
      auto v = f(c + h * xs[i]);
      v *= ws[i] * h;
      acc.add(v);
    }
  }
  return acc.get();
}

// Integrate over the breakpoint list [b0,b1],[b1,b2],... with GL order n per
// panel.
template <class F>
auto integrate_panels(F&& f, const std::vector<double>& bp, int n)
    -> decltype(f(0.0)) {
  Kahan<decltype(f(0.0))> acc;
  for (size_t i = 0; i + 1 < bp.size(); ++i)
    acc.add(integrate_gl(f, bp[i], bp[i + 1], n));
  return acc.get();
}

// Tanh-sinh (double-exponential) rule on (a, b); robust against algebraic
// endpoint singularities.  Fixed step 2^-6 over |t| <= 4 reaches roundoff for
// integrands analytic inside the interval.
template <class F>
auto integrate_de(F&& f, double a, double b) -> decltype(f(a)) {
  const double h = 1.0 / 64;
  const double c = 0.5 * (a + b), r = 0.5 * (b - a);
  Kahan<decltype(f(a))> acc;
  for (int k = -256; k <= 256; ++k) {
    double t = k * h;
    double s = 0.5 * PI * std::sinh(t);
    double x = std::tanh(s);
    double w = 0.5 * PI * std::cosh(t) / (std::cosh(s) * std::cosh(s));
    if (w < 1e-40) continue;
    double u = c + r * x;
    if (u <= a || u >= b) continue;  // clamp roundoff at the endpoints
    auto v = f(u);
    v *= w * r * h;
    acc.add(v);
  }
  return acc.get();
}

// Self-validation helper: evaluates `eval(n)` with doubled resolution until
// successive results differ by less than tol (absolute), or max doublings hit.
template <class F>
double self_validated(F&& eval, int n0, double tol, int max_doublings = 6) {
  double prev = eval(n0);
  for (int i = 0; i < max_doublings; ++i) {
    n0 *= 2;
    double cur = eval(n0);
    if (std::abs(cur - prev) < tol) return cur;
    prev = cur;
  }
  return prev;
}

struct QuadratureSpec {
  enum class Scheme { DoubleExp, GaussLegendre };
  int node_count = 400;
  double log_radius = 30.0;  // integrate u in [e^-R, e^R] in log coordinates
  double tolerance = 1e-10;
  Scheme scheme = Scheme::GaussLegendre;

  void validate() const {
    if (node_count <= 0 || log_radius <= 0 || tolerance <= 0)
      throw std::invalid_argument("QuadratureSpec fields must be positive");
  }
};

}  // namespace scs
