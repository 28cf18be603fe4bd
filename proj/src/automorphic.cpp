#include "scs/automorphic.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <vector>

#include "scs/special.hpp"
#include "scs/zeta.hpp"

namespace scs {

namespace {

struct Trunc {
  std::int64_t N = 0;
  double tail = 0;
};

// Smallest N with a certified bound Sum_{n>N} |lambda(n)|/sqrt(n) |W(+-nu)|
// below 1e-12 of the leading term.  Coefficients are bounded by
// d(n) n^theta <= 2 sqrt(n) n^theta, so a term is at most
// 4 n^theta envelope(nu) counting both signs of n; beyond N the terms are
// compared geometrically through the envelope ratio.
Trunc truncation_point(const AutomorphicVector& v, double u) {
  const double theta = v.coeff_growth;
  double lead = 0;
  for (std::int64_t N = 1;; ++N) {
    lead = std::max(lead, std::pow(static_cast<double>(N), theta) *
                              v.envelope(N * u));
    double e1 = v.envelope((N + 1) * u);
    if (e1 == 0) return {N, 0.0};
    // envelope decay ratio, probed at increasing offsets since the
    // power-law prefactor can make nearby ratios unrepresentative
    double q = 0;
    for (std::int64_t j : {1, 8, 64}) {
      double a = v.envelope((N + j) * u);
      double b = v.envelope((N + j + 1) * u);
      if (a > 0) q = std::max(q, b / a);
    }
    q *= std::pow(1.0 + 1.0 / (N + 1), theta);
    if (q < 0.95) {
      double tail = 4.0 * std::pow(static_cast<double>(N + 1), theta) * e1 /
                    (1.0 - q);
      if (tail <= 1e-12 * std::max(lead, 1e-300)) {
        if (N > v.hecke.n_max)
          throw TruncationError(
              "Fourier truncation needs more Hecke eigenvalues than available");
        return {N, tail};
      }
    }
    if (N > v.hecke.n_max + 4096)
      throw TruncationError("Fourier truncation bound not met");
  }
}

// Coefficients lambda(n)/sqrt(n) W(+-n u) for a fixed height, so that the
// x-dependence reduces to a phase recurrence.
struct Profile {
  std::int64_t N = 0;
  std::vector<cplx> pos, neg;  // index n-1
  cplx c0{0, 0};
  bool has_c0 = false;
};

Profile profile_at(const AutomorphicVector& v, double u) {
  Trunc tr = truncation_point(v, u);
  Profile p;
  p.N = tr.N;
  p.pos.resize(tr.N);
  p.neg.resize(tr.N);
  for (std::int64_t n = 1; n <= tr.N; ++n) {
    cplx scale = v.hecke.at(n) / std::sqrt(static_cast<double>(n));
    p.pos[n - 1] = scale * v.kirillov(n * u);
    p.neg[n - 1] = scale * v.kirillov(-n * u);
  }
  if (v.constant_term) {
    p.c0 = v.constant_term(u);
    p.has_c0 = true;
  }
  return p;
}

cplx eval_profile(const Profile& p, double x) {
  cplx e = std::exp(cplx(0, TWO_PI * x));
  cplx ph = e;
  Kahan<cplx> acc;
  for (std::int64_t n = 1; n <= p.N; ++n) {
    acc.add(p.pos[n - 1] * ph + p.neg[n - 1] * std::conj(ph));
    ph *= e;
  }
  cplx res = acc.get();
  if (p.has_c0) res += p.c0;
  return res;
}

// Integral over the truncated fundamental domain
// {|x| <= 1/2, x^2 + u^2 >= 1, u <= T} with measure dx du/u^2.  row(u) must
// return the x-section of the integrand; M_x is the trapezoid node count on
// the full period and must exceed every frequency present.
double domain_integral(
    const std::function<std::function<double(double)>(double)>& row, double T,
    int M_x) {
  const double arc_lo = std::sqrt(3.0) / 2;
  // lens part below height 1, bounded by the unit circle
  double lens = integrate_gl(
      [&](double u) {
        auto g = row(u);
        double a = std::sqrt(std::max(0.0, 1.0 - u * u));
        double both = integrate_gl(g, a, 0.5, 12, 2) +
                      integrate_gl(g, -0.5, -a, 12, 2);
        return both / (u * u);
      },
      arc_lo, 1.0, 16, 2);
  // full-period band above height 1, log coordinate in u
  int panels = std::max(1, static_cast<int>(std::ceil(std::log(T) / 0.25)));
  double band = integrate_gl(
      [&](double w) {
        double u = std::exp(w);
        auto g = row(u);
        Kahan<double> xs;
        for (int m = 0; m < M_x; ++m)
          xs.add(g(static_cast<double>(m) / M_x - 0.5));
        return xs.get() / M_x * std::exp(-w);
      },
      0.0, std::log(T), 16, panels);
  return lens + band;
}

// int_{R^x} |W(u)|^2 |u|^{s-1} d^x u in log coordinates
double kirillov_moment(const AutomorphicVector& v, double s) {
  return integrate_gl(
      [&](double w) {
        double u = std::exp(w);
        double mass = std::norm(v.kirillov(u)) + std::norm(v.kirillov(-u));
        if (mass == 0) return 0.0;
        return mass * std::exp((s - 1.0) * w);
      },
      -30.0, 9.0, 16, 156);
}

}  // namespace

AutomorphicVector delta_vector(std::int64_t n_max) {
  AutomorphicVector v;
  v.repr = ReprDescriptor::discrete(6);
  v.hecke = tau_sequence(n_max);
  v.kirillov = [](double u) -> cplx {
    if (u <= 0) return 0;
    return std::exp(6.0 * std::log(u) - TWO_PI * u);
  };
  v.envelope = [](double t) {
    // unimodal with maximum at 6/(2 pi); freeze below it
    t = std::max(t, 6.0 / TWO_PI);
    return std::exp(6.0 * std::log(t) - TWO_PI * t);
  };
  return v;
}

AutomorphicVector cusp_vector(const ReprDescriptor& repr, HeckeSequence hecke,
                              const WeightFunction& W) {
  if (!std::isfinite(W.support_lo) || !std::isfinite(W.support_hi))
    throw std::invalid_argument("cusp_vector: compactly supported W required");
  AutomorphicVector v;
  v.repr = repr;
  v.hecke = std::move(hecke);
  v.kirillov = [W](double u) { return W(u); };
  double hi_abs = std::max(std::abs(W.support_lo), std::abs(W.support_hi));
  double sup = 0;
  for (int i = 0; i <= 512; ++i) {
    double u = W.support_lo +
               (W.support_hi - W.support_lo) * (static_cast<double>(i) / 512);
    sup = std::max(sup, std::abs(W(u)));
  }
  v.envelope = [sup, hi_abs](double t) { return t < hi_abs ? sup : 0.0; };
  return v;
}

AutomorphicVector eisenstein_vector(cplx nu, std::int64_t n_max) {
  if (nu == cplx(0, 0))
    throw std::invalid_argument("eisenstein_vector: nu must be nonzero");
  cplx s = nu + 0.5;
  AutomorphicVector v;
  v.repr.kind = ReprDescriptor::Kind::Eisenstein;
  v.repr.ell = 0;
  v.repr.nu = nu;
  v.repr.lambda_pi = (0.25 - nu * nu).real();
  v.repr.lambda_tilde = 1 + std::abs(v.repr.lambda_pi);
  v.hecke = eisenstein_sequence(nu, n_max);
  v.coeff_growth = std::abs(nu.real());

  // phi = series of parameter s:  W_phi(u) = c sqrt|u| K_nu(2 pi |u|) with
  // c = 2 pi^s / (Gamma(s) zeta(2s)), and zeroth coefficient
  // |u|^s + (Lambda(2s-1)/Lambda(2s)) |u|^{1-s}.
  cplx c = 2.0 * std::exp(s * std::log(PI) - lgamma_complex(s)) / zeta(2.0 * s);
  cplx ratio = zeta_completed(2.0 * s - 1.0) / zeta_completed(2.0 * s);
  v.kirillov = [c, nu](double u) -> cplx {
    double a = std::abs(u);
    return c * std::sqrt(a) * bessel_k(nu, TWO_PI * a);
  };
  v.constant_term = [s, ratio](double u) -> cplx {
    double la = std::log(std::abs(u));
    return std::exp(s * la) + ratio * std::exp((1.0 - s) * la);
  };
  double cab = std::abs(c);
  double sig = std::abs(nu.real());
  v.envelope = [cab, sig](double t) {
    // |K_nu(x)| <= K_{|Re nu|}(x); the bound is decreasing on t >= 0.05
    t = std::max(t, 0.05);
    return cab * std::sqrt(t) *
           std::abs(bessel_k(cplx(sig, 0), TWO_PI * t));
  };
  return v;
}

cplx eval_vector(const AutomorphicVector& v, double x, double u) {
  if (u < 0.05)
    throw std::invalid_argument("eval_vector: u >= 0.05 required");
  return eval_profile(profile_at(v, u), x);
}

cplx period_integral(const AutomorphicVector& v1, const AutomorphicVector& v2,
                     std::int64_t h, double Y, const QuadratureSpec& quad) {
  if (h < 1) throw std::invalid_argument("period_integral: h >= 1 required");
  if (Y <= 0) throw std::invalid_argument("period_integral: Y > 0 required");
  quad.validate();
  double u = 1.0 / Y;
  Profile p1 = profile_at(v1, u);
  Profile p2 = profile_at(v2, u);
  // the integrand is a trigonometric polynomial of degree at most
  // N1 + N2 + h after truncation, so the periodic trapezoid rule is exact
  // once M exceeds that degree
  std::int64_t M = p1.N + p2.N + h + 9;
  if (M < quad.node_count) M = quad.node_count;
  Kahan<cplx> acc;
  for (std::int64_t m = 0; m < M; ++m) {
    double x = static_cast<double>(m) / M;
    acc.add(eval_profile(p1, x) * eval_profile(p2, x) *
            std::exp(cplx(0, -TWO_PI * h * x)));
  }
  return acc.get() / static_cast<double>(M);
}

UnfoldReport unfold_check(const AutomorphicVector& v, double s, double T,
                          const QuadratureSpec& quad) {
  if (!(s > 1.5 && s <= 3.0))
    throw std::invalid_argument("unfold_check: s in (1.5, 3] required");
  if (v.constant_term)
    throw std::invalid_argument("unfold_check: cusp vector required");
  quad.validate();

  UnfoldReport rep;

  // unfolded side: Dirichlet series times the Kirillov-side moment
  Kahan<double> dir;
  for (std::int64_t n = 1; n <= v.hecke.n_max; ++n)
    dir.add(std::norm(v.hecke.values[n]) *
            std::pow(static_cast<double>(n), -s));
  std::int64_t K = std::min<std::int64_t>(1000, v.hecke.n_max);
  double avg = 0;
  for (std::int64_t n = v.hecke.n_max - K + 1; n <= v.hecke.n_max; ++n)
    avg += std::norm(v.hecke.values[n]);
  avg /= K;
  double dtail =
      avg * std::pow(static_cast<double>(v.hecke.n_max), 1.0 - s) / (s - 1.0);
  rep.rhs = (dir.get() + dtail) * kirillov_moment(v, s);

  // geometric side over the truncated fundamental domain
  AutomorphicVector E = eisenstein_vector(cplx(s - 0.5, 0), 512);
  double arc_lo = std::sqrt(3.0) / 2;
  Trunc tv = truncation_point(v, arc_lo);
  Trunc te = truncation_point(E, arc_lo);
  int M_x = static_cast<int>(2 * tv.N + te.N + 9);
  rep.lhs = domain_integral(
      [&](double u) -> std::function<double(double)> {
        auto pv = std::make_shared<Profile>(profile_at(v, u));
        auto pe = std::make_shared<Profile>(profile_at(E, u));
        return [pv, pe](double x) {
          return std::norm(eval_profile(*pv, x)) *
                 eval_profile(*pe, x).real();
        };
      },
      T, M_x);

  // above height T the cusp form dies like its envelope squared while the
  // series grows like u^s
  rep.tail_estimate = 2.0 * v.envelope(T) * v.envelope(T) * std::pow(T, s - 1);
  rep.tail_warning =
      rep.tail_estimate > 1e-4 * std::max(std::abs(rep.rhs), 1e-300);
  return rep;
}

double norm_phi_sq(const AutomorphicVector& v, double T,
                   const QuadratureSpec& quad) {
  quad.validate();
  Trunc tv = truncation_point(v, std::sqrt(3.0) / 2);
  int M_x = static_cast<int>(2 * tv.N + 9);
  return domain_integral(
      [&](double u) -> std::function<double(double)> {
        auto pv = std::make_shared<Profile>(profile_at(v, u));
        return [pv](double x) { return std::norm(eval_profile(*pv, x)); };
      },
      T, M_x);
}

double quotient_volume() {
  // residue at s = 1 of the zeroth coefficient Lambda(2s-1)/Lambda(2s),
  // Richardson-extrapolated to kill the linear term of the Laurent series
  auto probe = [](double d) {
    return (d * zeta_completed(cplx(1 + 2 * d, 0)) /
            zeta_completed(cplx(2 + 2 * d, 0)))
        .real();
  };
  double r1 = probe(1e-3);
  double r2 = probe(5e-4);
  return 1.0 / (2 * r2 - r1);
}

CPiReport c_pi(const AutomorphicVector& v) {
  CPiReport rep;
  if (v.repr.kind == ReprDescriptor::Kind::Eisenstein) {
    rep.value = std::norm(zeta(1.0 + 2.0 * v.repr.nu)) / PI;
    rep.error_estimate = 1e-12 * rep.value;
    return rep;
  }
  if (v.hecke.source != HeckeSequence::Source::Tau)
    throw std::invalid_argument("c_pi: cusp case requires the tau sequence");
  double vol = quotient_volume();
  // smoothed second moment (1/X) Sum lambda(n)^2 e^{-n/X}; the X^{-1/2}
  // error term cancels in the two-point extrapolation
  auto smoothed = [&](double X) {
    Kahan<double> acc;
    for (std::int64_t n = 1; n <= v.hecke.n_max; ++n)
      acc.add(std::norm(v.hecke.values[n]) * std::exp(-n / X));
    return acc.get() / X;
  };
  double X = std::min(2000.0, static_cast<double>(v.hecke.n_max) / 30.0);
  double rX = smoothed(X);
  double rq = smoothed(X / 4);
  rep.value = vol * (2 * rX - rq);
  rep.error_estimate = vol * std::abs(rX - rq);
  rep.slow_convergence = rep.error_estimate > 0.01 * rep.value;
  return rep;
}

}  // namespace scs
