#include "scs/kirillov.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace scs {

namespace {

struct LogWindow {
  double lo, hi;
};

// Integration window in w = log|u| for Sum_m u^{e} W^{(m)} style integrands.
// `low_exponent` is the smallest power of u the squared integrand carries
// near 0 (relative to d^x u); the window cuts where the integrand has dropped
// by e^{-45} relative to its bulk.
LogWindow log_window(const WeightFunction& W, double low_exponent) {
  switch (W.family) {
    case WeightFunction::Family::Bump: {
      double lo = std::min(std::abs(W.support_lo), std::abs(W.support_hi));
      double hi = std::max(std::abs(W.support_lo), std::abs(W.support_hi));
      return {std::log(lo), std::log(hi)};
    }
    case WeightFunction::Family::ExpFamily: {
      double w_lo = -45.0 / std::max(low_exponent, 0.25);
      double r = 50.0;
      double decay = 2.0 * W.z.real();
      for (int it = 0; it < 20; ++it)
        r = (100.0 + (W.k + 2) * std::log(r + 2.0)) / decay;
      return {w_lo, std::log(r)};
    }
    case WeightFunction::Family::MonomialGauss:
      return {std::log(W.b / 120.0), std::log(120.0 / W.a + 4.0)};
  }
  throw std::logic_error("log_window: unknown family");
}

double integrate_log(const std::function<double(double)>& g, LogWindow win) {
  int panels = std::max(4, static_cast<int>((win.hi - win.lo) / 0.25));
  return integrate_gl(g, win.lo, win.hi, 16, panels);
}

}  // namespace

NormReport ad_norm(const WeightFunction& W, int d) {
  if (d < 0) throw std::invalid_argument("ad_norm: d >= 0 required");
  NormReport rep;
  rep.d = d;
  for (int j = 0; j <= d; ++j) {
    if (W.family == WeightFunction::Family::ExpFamily && W.k - 2 * j - d <= 0)
      throw AdNormDivergence(
          j, "ad_norm: divergent at u -> 0 for derivative order j = " +
                 std::to_string(j) + " (exp_family needs k - 2j - d > 0, k = " +
                 std::to_string(W.k) + ", d = " + std::to_string(d) + ")");
    double low_exp =
        W.family == WeightFunction::Family::ExpFamily ? W.k - 2 * j - d : 1;
    auto g = [&](double w) {
      double v = std::exp(w);
      double u = W.on_negative_axis() ? -v : v;
      double y = std::abs(W.derivative(u, j));
      if (y == 0) return 0.0;
      // (|u| + |u|^{-1})^d |W^(j)|^2 in logs to dodge overflow at small u
      return std::exp(d * std::log(v + 1.0 / v) + 2.0 * std::log(y));
    };
    double val = integrate_log(g, log_window(W, low_exp));
    rep.terms.push_back({j, val});
    rep.value += std::sqrt(val);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// DiffOperator
// ---------------------------------------------------------------------------

DiffOperator DiffOperator::identity() {
  DiffOperator d;
  d.coeff.resize(1);
  d.coeff[0][0] = 1.0;
  return d;
}

DiffOperator DiffOperator::lie(LieOp op, double lambda) {
  DiffOperator d;
  const cplx two_pi_i(0, TWO_PI);
  switch (op) {
    case LieOp::H:
      d.coeff.resize(2);
      d.coeff[1][1] = 2.0;
      break;
    case LieOp::R:
      d.coeff.resize(1);
      d.coeff[0][1] = two_pi_i;
      break;
    case LieOp::L:
      d.coeff.resize(3);
      d.coeff[0][-1] = -lambda / two_pi_i;
      d.coeff[2][1] = -1.0 / two_pi_i;
      break;
  }
  return d;
}

DiffOperator DiffOperator::compose(const DiffOperator& rhs) const {
  DiffOperator out;
  out.coeff.resize(coeff.size() + rhs.coeff.size() - 1);
  for (size_t m = 0; m < coeff.size(); ++m) {
    for (const auto& [ea, ca] : coeff[m]) {
      // distribute d^m over b_n(u) d^n via Leibniz
      for (size_t n = 0; n < rhs.coeff.size(); ++n) {
        double binom = 1.0;
        for (size_t i = 0; i <= m; ++i) {
          for (const auto& [eb, cb] : rhs.coeff[n]) {
            // i-th derivative of u^{eb}: falling factorial
            double fall = 1.0;
            for (size_t t = 0; t < i; ++t) fall *= eb - static_cast<double>(t);
            if (fall == 0.0) continue;
            out.coeff[m - i + n][ea + eb - static_cast<int>(i)] +=
                binom * fall * ca * cb;
          }
          binom *= static_cast<double>(m - i) / (i + 1);
        }
      }
    }
  }
  return out;
}

DiffOperator DiffOperator::operator*(double s) const {
  DiffOperator out = *this;
  for (auto& m : out.coeff)
    for (auto& [e, c] : m) c *= s;
  return out;
}

DiffOperator DiffOperator::operator+(const DiffOperator& rhs) const {
  DiffOperator out = *this;
  if (rhs.coeff.size() > out.coeff.size()) out.coeff.resize(rhs.coeff.size());
  for (size_t m = 0; m < rhs.coeff.size(); ++m)
    for (const auto& [e, c] : rhs.coeff[m]) out.coeff[m][e] += c;
  return out;
}

cplx DiffOperator::apply(const WeightFunction& W, double u) const {
  cplx sum = 0;
  for (size_t m = 0; m < coeff.size(); ++m) {
    if (coeff[m].empty()) continue;
    cplx wm = W.derivative(u, static_cast<int>(m));
    if (wm == cplx(0, 0)) continue;
    cplx poly = 0;
    for (const auto& [e, c] : coeff[m]) poly += c * std::pow(std::abs(u), e) *
                                                (u < 0 && (e % 2) ? -1.0 : 1.0);
    sum += poly * wm;
  }
  return sum;
}

std::vector<cplx> lie_apply(LieOp op, const WeightFunction& W, double lambda,
                            const std::vector<double>& grid) {
  DiffOperator d = DiffOperator::lie(op, lambda);
  std::vector<cplx> out(grid.size());
  for (size_t i = 0; i < grid.size(); ++i) out[i] = d.apply(W, grid[i]);
  return out;
}

// ---------------------------------------------------------------------------
// Sobolev estimate
// ---------------------------------------------------------------------------

SobolevReport sobolev_upper(const WeightFunction& W, int d,
                            const ReprDescriptor& repr) {
  SobolevReport rep;
  rep.upper = std::pow(repr.lambda_tilde, d) * ad_norm(W, 2 * d).value;
  if (d > 3) return rep;

  // enumerate all words over {H,R,L} of length 0..d
  std::vector<DiffOperator> monomials{DiffOperator::identity()};
  std::vector<DiffOperator> frontier = monomials;
  for (int len = 1; len <= d; ++len) {
    std::vector<DiffOperator> next;
    for (const auto& m : frontier)
      for (LieOp op : {LieOp::H, LieOp::R, LieOp::L})
        next.push_back(DiffOperator::lie(op, repr.lambda_pi).compose(m));
    monomials.insert(monomials.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  Kahan<double> total;
  for (const auto& mono : monomials) {
    auto g = [&](double w) {
      double v = std::exp(w);
      double u = W.on_negative_axis() ? -v : v;
      return std::norm(mono.apply(W, u));
    };
    // smallest u-power of |DW|^2 near zero controls the lower cut
    double low_exp = 1;
    if (W.family == WeightFunction::Family::ExpFamily) {
      double smin = 1e9;
      for (size_t m = 0; m < mono.coeff.size(); ++m)
        for (const auto& [e, c] : mono.coeff[m])
          smin = std::min(smin, 0.5 * W.k - static_cast<double>(m) + e);
      low_exp = 2 * smin;
    }
    total.add(std::sqrt(integrate_log(g, log_window(W, low_exp))));
  }
  rep.direct = total.get();
  rep.direct_available = true;
  rep.ratio = rep.direct / rep.upper;
  return rep;
}

// ---------------------------------------------------------------------------
// Orthonormality and bounds for the Whittaker basis
// ---------------------------------------------------------------------------

double orthonormality_defect(const WhittakerParams& params,
                             const QuadratureSpec& quad) {
  quad.validate();
  double y0 = std::abs(params.p) + std::abs(params.repr.nu) + 1.0;
  double w_hi = std::min(quad.log_radius, std::log(60.0 * y0));
  double w_lo = -quad.log_radius;
  int panels = std::max(1, quad.node_count / 16);
  WhittakerParams pos(params.p, params.repr, +1);
  WhittakerParams neg(params.p, params.repr, -1);
  auto g = [&](double w) {
    double v = std::exp(w);
    double s = 0;
    if (!pos.degenerate()) {
      double a = whittaker_normalized(pos, v);
      s += a * a;
    }
    if (!neg.degenerate()) {
      double a = whittaker_normalized(neg, -v);
      s += a * a;
    }
    return s;
  };
  double integral = integrate_gl(g, w_lo, w_hi, 16, panels);
  return std::abs(integral - 1.0);
}

FittedConstant bound_sweep(const WhittakerParams& params, BoundRegime regime,
                           const std::vector<double>& grid) {
  const double eps = 0.1;
  double y0 = std::abs(params.p) + std::abs(params.repr.nu) + 1.0;
  double re_nu = params.repr.nu.real();
  FittedConstant fit;
  fit.grid_points = grid.size();
  for (double u : grid) {
    double au = std::abs(u);
    WhittakerParams pp(params.p, params.repr, u > 0 ? +1 : -1);
    double num = pp.degenerate() ? 0.0 : whittaker_normalized(pp, u);
    double rhs;
    switch (regime) {
      case BoundRegime::LargeU:
        rhs = std::sqrt(au) * std::pow(au / y0, -1.0 - re_nu) *
              std::exp(-au / y0);
        break;
      case BoundRegime::SmallU:
        if (params.repr.is_discrete()) {
          double p = std::abs(params.p);
          rhs = std::sqrt(p) * std::pow(3 * p * au, 0.5 - eps);
        } else {
          rhs = y0 * std::pow(au, 0.5 - eps);
        }
        break;
      case BoundRegime::LargeUD: {
        if (!params.repr.is_discrete())
          throw std::invalid_argument(
              "bound_sweep: LargeUD applies to the discrete series only");
        double p = std::abs(params.p);
        int ell = params.repr.ell;
        rhs = std::pow(3 * p, ell + 1.5) * std::pow(au, -ell - 1.0);
        break;
      }
      default:
        throw std::logic_error("bound_sweep: unknown regime");
    }
    double ratio = num / rhs;
    if (ratio > fit.sup) {
      fit.sup = ratio;
      fit.arg_sup = u;
    }
  }
  return fit;
}

double convolution_identity_check(int ell, int p, double u,
                                  const QuadratureSpec& quad) {
  quad.validate();
  if (ell < 1 || ell > 8)
    throw std::invalid_argument("convolution_identity_check: ell in [1, 8]");
  if (std::abs(p) < ell)
    throw std::invalid_argument("convolution_identity_check: |p| >= ell");
  if (!(u > 0)) throw std::invalid_argument("convolution_identity_check: u > 0");

  // The identity lives in the arithmetically scaled variable: with
  // V(u) := ~W(4 pi u) one has V(u) = (-1)^p int j_{l-1/2}(y) V(y/u) d^x y.
  // (The 4 pi matches the kernel's J_{2l-1}(4 pi sqrt(y)); without it the
  // two sides disagree by orders of magnitude.)
  WhittakerParams params(std::abs(p), ReprDescriptor::discrete(ell), +1);
  // the identity needs the signed value: for p > ell the Laguerre-type factor
  // of W_{p, l-1/2} changes sign, which the modulus normalization hides
  auto signed_normalized = [&](double x) {
    double mag = whittaker_normalized(params, x);
    if (mag == 0) return 0.0;
    double w = whittaker_w(params.p, params.repr.nu, x).real();
    return w < 0 ? -mag : mag;
  };
  double lhs = signed_normalized(4 * PI * u);

  // y-range where V(y/u) is not negligible: v = 4 pi y / u with
  // v^{p+l} e^{-v/2} > 1e-18 * peak
  double v_hi = 2.0 * (45.0 + (std::abs(p) + ell) * 10.0);
  for (int it = 0; it < 20; ++it)
    v_hi = 2.0 * (45.0 + (std::abs(p) + ell) * std::log(v_hi));
  double y_max = u * v_hi / (4 * PI);

  // breakpoints: 0, the split at |3pu|, and the kernel's oscillation nodes
  std::vector<double> bp{0.0, std::min(std::abs(3.0 * p * u), y_max)};
  for (int k = 1;; ++k) {
    double z = bessel_j_zero(2 * ell - 1, k);
    double y = std::pow(z / (4 * PI), 2);
    if (y >= y_max) break;
    bp.push_back(y);
  }
  bp.push_back(y_max);
  std::sort(bp.begin(), bp.end());
  bp.erase(std::unique(bp.begin(), bp.end()), bp.end());

  int n = std::clamp(quad.node_count / 16, 8, 64);
  auto integrand = [&](double y) {
    if (y <= 0) return 0.0;
    return bessel_kernel(ell, y) * signed_normalized(4 * PI * y / u) / y;
  };
  double rhs = ((p % 2 == 0) ? 1.0 : -1.0) * integrate_panels(integrand, bp, n);
  return std::abs(lhs - rhs);
}

}  // namespace scs
