#include "scs/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "scs/automorphic.hpp"
#include "scs/hecke.hpp"
#include "scs/kirillov.hpp"
#include "scs/shifted_sum.hpp"
#include "scs/special.hpp"
#include "scs/transforms.hpp"
#include "scs/zeta.hpp"

namespace scs {

namespace {

void push(SuiteReport& rep, const std::string& name, double residual,
          double tolerance) {
  CheckResult c;
  c.name = name;
  c.residual = residual;
  c.tolerance = tolerance;
  c.pass = std::isfinite(residual) && residual <= tolerance;
  rep.pass = rep.pass && c.pass;
  rep.checks.push_back(std::move(c));
}

// geometric sweep grid with a deterministic +-1% jitter from the seed
std::vector<double> jittered_grid(double lo, double hi, double ratio,
                                  unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> jit(-0.01, 0.01);
  std::vector<double> g;
  for (double u = lo; u <= hi; u *= ratio) g.push_back(u * (1 + jit(rng)));
  return g;
}

SuiteReport suite_special(const VerifyOptions& opts) {
  SuiteReport rep;
  rep.suite = "special";

  QuadratureSpec quad;
  quad.node_count = std::max(2 * opts.quad_nodes, 200);
  push(rep, "whittaker_orthonormality_discrete_l1_p1",
       orthonormality_defect(WhittakerParams(1, ReprDescriptor::discrete(1)),
                             quad),
       1e-8);
  push(rep, "whittaker_orthonormality_discrete_l6_p7",
       orthonormality_defect(WhittakerParams(7, ReprDescriptor::discrete(6)),
                             quad),
       1e-8);
  QuadratureSpec dense = quad;  // principal series needs the denser rule
  dense.node_count = 2 * quad.node_count;
  push(rep, "whittaker_orthonormality_principal_R5_p0",
       orthonormality_defect(WhittakerParams(0, ReprDescriptor::principal(5.0)),
                             dense),
       1e-6);

  // W_{0,nu}(2x) = sqrt(2x/pi) K_nu(x)
  double worst = 0;
  for (cplx nu : {cplx(0.3, 0), cplx(0, 2.0)}) {
    for (double x : {0.5, 1.0, 5.0}) {
      cplx lhs = whittaker_w(0, nu, 2 * x);
      cplx rhs = std::sqrt(2 * x / PI) * bessel_k(nu, x);
      worst = std::max(worst, std::abs(lhs - rhs) / std::abs(rhs));
    }
  }
  push(rep, "bessel_k_reduction", worst, 1e-8);

  push(rep, "zeta_at_2",
       std::abs(zeta(cplx(2, 0)) - PI * PI / 6) / (PI * PI / 6), 1e-12);
  return rep;
}

SuiteReport suite_kirillov(const VerifyOptions& opts) {
  SuiteReport rep;
  rep.suite = "kirillov";

  QuadratureSpec quad;
  quad.node_count = std::max(opts.quad_nodes, 256);
  push(rep, "convolution_identity_l1_p1_u1",
       convolution_identity_check(1, 1, 1.0, quad), 1e-5);
  push(rep, "convolution_identity_l6_p6_u2",
       convolution_identity_check(6, 6, 2.0, quad), 1e-5);

  WhittakerParams disc(6, ReprDescriptor::discrete(6));
  auto big = jittered_grid(1.0, 1000.0, 1.3, opts.seed);
  auto largeu = bound_sweep(disc, BoundRegime::LargeU, big);
  push(rep, "bound_sweep_largeu_finite", largeu.sup, 1e3);

  auto small = jittered_grid(1e-6, 1.0, 1.7, opts.seed + 1);
  auto smallu = bound_sweep(WhittakerParams(3, ReprDescriptor::discrete(1)),
                            BoundRegime::SmallU, small);
  push(rep, "bound_sweep_smallu_finite", smallu.sup, 1e3);

  auto sob = sobolev_upper(WeightFunction::bump(4.0, 2.0), 2,
                           ReprDescriptor::principal(13.7797));
  // the direct Lie-monomial sum must not exceed its Sobolev majorant
  push(rep, "sobolev_upper_dominates", sob.ratio, 1.0 + 1e-9);
  return rep;
}

SuiteReport suite_automorphic(const VerifyOptions&) {
  SuiteReport rep;
  rep.suite = "automorphic";

  auto v = delta_vector(20000);
  auto un = unfold_check(v, 2.0, 20.0);
  push(rep, "rankin_selberg_unfold_s2",
       std::abs(un.lhs - un.rhs) / std::abs(un.rhs), 1e-3);

  push(rep, "quotient_volume_pi_over_3",
       std::abs(quotient_volume() - PI / 3) / (PI / 3), 1e-6);

  auto e = eisenstein_vector(cplx(1.5, 0), 64);
  double ref = std::pow(std::abs(zeta(cplx(4, 0))), 2) / PI;
  push(rep, "c_pi_eisenstein_closed_form",
       std::abs(c_pi(e).value - ref) / ref, 1e-9);

  // one cross-module identity point: period integral vs direct sum
  auto seq = tau_sequence(64);
  auto W1 = WeightFunction::bump(3.0, 1.5);
  auto W2 = WeightFunction::bump(2.5, 1.4).reflected();
  auto repr = ReprDescriptor::discrete(6);
  cplx direct = direct_sum(SumSpec(2, 1.0, SumSign::Plus, seq, seq, W1, W2));
  cplx period = period_integral(cusp_vector(repr, seq, W1),
                                cusp_vector(repr, seq, W2), 2, 1.0);
  push(rep, "direct_sum_vs_period_integral",
       std::abs(direct - period) / std::max(1e-30, std::abs(direct)), 1e-9);
  return rep;
}

SuiteReport suite_transforms(const VerifyOptions&) {
  SuiteReport rep;
  rep.suite = "transforms";

  push(rep, "g_hat_closed_form_s2_q1",
       std::abs(g_hat(cplx(2, 0), 1) - 1.0 / 6.0) * 6.0, 1e-14);

  // closed form against quadrature; [0,1/2] taken in v = -log t so the
  // t^{i Im s} oscillation has uniform frequency, [1/2,1] plain GL
  double worst = 0;
  for (int q : {1, 8}) {
    SmoothCutoff G(q);
    for (double sr : {1.5, 2.5}) {
      for (double si : {0.0, 10.0}) {
        cplx s(sr, si);
        cplx a = s + cplx(q - 1, 0);
        double V = std::log(2.0) + 50.0 / a.real();
        int p_low =
            std::max(8, static_cast<int>(std::ceil(std::abs(a) * V / 6)));
        cplx low = integrate_gl(
            [&](double t) {
              return std::exp(-a * t) * std::pow(1 - std::exp(-t), q);
            },
            std::log(2.0), V, 16, p_low);
        cplx high = integrate_gl(
            [&](double t) { return G(t) * std::exp((s - 2.0) * std::log(t)); },
            0.5, 1.0, 16, std::max(4, static_cast<int>(si)));
        cplx got = g_hat(s, q);
        worst = std::max(worst, std::abs(got - low - high) / std::abs(got));
      }
    }
  }
  push(rep, "g_hat_vs_quadrature", worst, 1e-12);

  double split_worst = 0;
  split_worst = std::max(split_worst, split_identity_check(1, 1, 4.0, 4, 8).residual);
  split_worst = std::max(split_worst, split_identity_check(2, 3, 6.0, 6, 9).residual);
  split_worst = std::max(split_worst, split_identity_check(1, 2, 3.0, 8, 10).residual);
  push(rep, "split_identity_grid", split_worst, 1e-8);

  push(rep, "g_tilde_decay_constant_finite", g_tilde_decay_constant(8), 1e9);

  double gate = 1;
  try {
    auto n = ad_norm(WeightFunction::exp_family(64, cplx(1, 0)), 20);
    if (n.convergent && std::isfinite(n.value)) gate = 0;
  } catch (const AdNormDivergence&) {
  }
  push(rep, "kernel_norm_gate_k64_finite", gate, 0.5);
  gate = 1;
  try {
    ad_norm(WeightFunction::exp_family(10, cplx(1, 0)), 20);
  } catch (const AdNormDivergence&) {
    gate = 0;
  }
  push(rep, "kernel_norm_gate_k10_divergent", gate, 0.5);
  return rep;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {
      "special", "kirillov", "automorphic", "transforms", "all"};
  return names;
}

SuiteReport run_suite(const std::string& suite, const VerifyOptions& opts) {
  if (suite == "special") return suite_special(opts);
  if (suite == "kirillov") return suite_kirillov(opts);
  if (suite == "automorphic") return suite_automorphic(opts);
  if (suite == "transforms") return suite_transforms(opts);
  if (suite == "all") {
    SuiteReport rep;
    rep.suite = "all";
    for (const auto& name : suite_names()) {
      if (name == "all") continue;
      auto sub = run_suite(name, opts);
      for (auto& c : sub.checks) {
        c.name = sub.suite + "." + c.name;
        rep.pass = rep.pass && c.pass;
        rep.checks.push_back(std::move(c));
      }
    }
    return rep;
  }
  throw std::invalid_argument("run_suite: unknown suite '" + suite + "'");
}

}  // namespace scs
