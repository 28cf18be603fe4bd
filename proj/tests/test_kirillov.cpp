#include "scs/kirillov.hpp"

#include <cmath>

#include "doctest.h"
#include "scs/special.hpp"
#include "scs/weights.hpp"

using namespace scs;

namespace {

// j-th derivative by the Cauchy integral formula on a circle of radius r
// around u0, trapezoid in the angle.  Independent of the symbolic recurrences
// inside WeightFunction.
template <class F>
cplx cauchy_derivative(F&& f, double u0, double r, int j) {
  const int M = 1024;
  Kahan<cplx> acc;
  double lfact = std::lgamma(j + 1.0);
  for (int m = 0; m < M; ++m) {
    double th = TWO_PI * m / M;
    cplx zeta = u0 + r * std::exp(cplx(0, th));
    // f(zeta) / (zeta - u0)^{j+1} * d zeta, with d zeta = i r e^{i th} d th
    acc.add(f(zeta) * std::exp(cplx(0, -th * j)));
  }
  return acc.get() * std::exp(lfact - j * std::log(r)) / static_cast<double>(M);
}

cplx bump_analytic(cplx t) { return std::exp(-1.0 / (1.0 - t * t)); }

}  // namespace

TEST_CASE("bump derivatives against Cauchy integral") {
  double c = 3.0, w = 1.5;
  auto W = WeightFunction::bump(c, w);
  auto f = [&](cplx u) { return bump_analytic((u - c) / w); };
  for (double u0 : {3.0, 3.6, 2.2}) {
    for (int j : {0, 1, 2, 5, 9, 12}) {
      cplx ref = cauchy_derivative(f, u0, 0.5, j);
      cplx got = W.derivative(u0, j);
      CHECK(std::abs(got - ref) <= 1e-8 * std::max(std::abs(ref), 1.0));
    }
    // high order: the oracle's own roundoff (j!/r^j amplification) limits the
    // comparison, so only a loose relative agreement is meaningful
    cplx ref20 = cauchy_derivative(f, u0, 0.5, 20);
    CHECK(std::abs(W.derivative(u0, 20) - ref20) < 1e-4 * std::abs(ref20));
  }
  // compact support with all derivatives vanishing at the boundary
  CHECK(W(c + w) == cplx(0, 0));
  CHECK(W.derivative(c - w, 7) == cplx(0, 0));
  CHECK(W(c + 2 * w) == cplx(0, 0));
  CHECK_THROWS_AS(WeightFunction::bump(1.0, 2.0), std::invalid_argument);
}

TEST_CASE("exp_family derivatives against Cauchy integral") {
  auto W = WeightFunction::exp_family(4, cplx(1, 0));
  auto f = [](cplx u) { return u * u * std::exp(-u); };
  for (int j : {0, 1, 3, 8, 15}) {
    // f is entire, so the circle can grow with the order to keep the
    // Cauchy-coefficient cancellation in check
    double r = std::max(2.0, static_cast<double>(j));
    cplx ref = cauchy_derivative(f, 2.0, r, j);
    CHECK(std::abs(W.derivative(2.0, j) - ref) <=
          1e-10 * std::max(std::abs(ref), 1.0));
  }
  CHECK(W(-1.0) == cplx(0, 0));  // zero on u < 0 by convention
  CHECK(W(0.0) == cplx(0, 0));
  // odd k: half-integer power, check value directly
  auto W5 = WeightFunction::exp_family(5, cplx(2, 0));
  CHECK(W5(3.0).real() ==
        doctest::Approx(std::pow(3.0, 2.5) * std::exp(-6.0)).epsilon(1e-14));
}

TEST_CASE("monomial_gauss derivatives against Cauchy integral") {
  auto W = WeightFunction::monomial_gauss(2.0, 2.0);
  auto f = [](cplx u) { return u * std::exp(-(u + 1.0 / u)); };
  for (int j : {0, 1, 2, 6, 10}) {
    cplx ref = cauchy_derivative(f, 1.5, 1.0, j);
    CHECK(std::abs(W.derivative(1.5, j) - ref) <=
          1e-9 * std::max(std::abs(ref), 1.0));
  }
}

TEST_CASE("reflected weights mirror values and flip odd derivatives") {
  auto W = WeightFunction::bump(3.0, 1.0);
  auto M = W.reflected();
  CHECK(M(-3.2) == W(3.2));
  CHECK(M.derivative(-3.2, 1) == -W.derivative(3.2, 1));
  CHECK(M.derivative(-3.2, 2) == W.derivative(3.2, 2));
  CHECK(M.support_lo == -4.0);
  CHECK(M.support_hi == -2.0);
  CHECK(M(3.2) == cplx(0, 0));
}

TEST_CASE("ad_norm closed form for monomial_gauss") {
  // ||W||^2_{A^0} = int_0^inf u e^{-2u-2/u} du = 2 K_2(4)
  // via int_0^inf t^{s-1} e^{-at-b/t} dt = 2 (b/a)^{s/2} K_s(2 sqrt(ab))
  auto W = WeightFunction::monomial_gauss(2.0, 2.0);
  auto rep = ad_norm(W, 0);
  double ref = 2.0 * bessel_k(cplx(2, 0), 4.0).real();
  CHECK(rep.terms.size() == 1);
  CHECK(rep.terms[0].integral == doctest::Approx(ref).epsilon(1e-10));
  CHECK(rep.value == doctest::Approx(std::sqrt(ref)).epsilon(1e-10));
}

TEST_CASE("ad_norm convergence gate for exp_family") {
  auto ok = ad_norm(WeightFunction::exp_family(64, cplx(1, 0)), 20);
  CHECK(ok.convergent);
  CHECK(ok.value > 0);
  CHECK(std::isfinite(ok.value));
  CHECK(ok.terms.size() == 21);

  try {
    ad_norm(WeightFunction::exp_family(10, cplx(1, 0)), 20);
    FAIL("expected divergence");
  } catch (const AdNormDivergence& e) {
    // first divergent term: k - 2j - d <= 0 at j = 0 already (10 - 20 <= 0)
    CHECK(e.j == 0);
  }
}

TEST_CASE("ad_norm monotone in d") {
  auto W = WeightFunction::bump(4.0, 2.0);
  double prev = ad_norm(W, 0).value;
  for (int d = 1; d <= 4; ++d) {
    double cur = ad_norm(W, d).value;
    CHECK(cur >= prev);
    prev = cur;
  }
}

TEST_CASE("lie operators: Euler weight and multiplication") {
  auto W = WeightFunction::monomial_gauss(2.0, 2.0);
  std::vector<double> grid{0.5, 1.0, 2.0};
  // R is multiplication by 2 pi i u
  auto r = lie_apply(LieOp::R, W, 0.0, grid);
  for (size_t i = 0; i < grid.size(); ++i) {
    CHECK(std::abs(r[i]) ==
          doctest::Approx(TWO_PI * grid[i] * std::abs(W(grid[i]))).epsilon(1e-13));
  }
  // H = 2u d/du
  auto h = lie_apply(LieOp::H, W, 0.0, grid);
  for (size_t i = 0; i < grid.size(); ++i) {
    cplx expect = 2.0 * grid[i] * W.derivative(grid[i], 1);
    CHECK(std::abs(h[i] - expect) < 1e-13);
  }
}

TEST_CASE("casimir identity on every weight family") {
  for (double lambda : {0.25 + 25.0, 0.25 - 30.25, 190.13}) {
    DiffOperator H = DiffOperator::lie(LieOp::H, lambda);
    DiffOperator R = DiffOperator::lie(LieOp::R, lambda);
    DiffOperator L = DiffOperator::lie(LieOp::L, lambda);
    DiffOperator cas = H.compose(H) + H * (-2.0) + R.compose(L) * 4.0;
    WeightFunction ws[] = {WeightFunction::bump(3.0, 1.0),
                           WeightFunction::exp_family(8, cplx(1.5, 0)),
                           WeightFunction::monomial_gauss(2.0, 3.0)};
    for (const auto& W : ws) {
      for (double u : {0.7, 1.3, 2.8, 3.5}) {
        cplx lhs = cas.apply(W, u);
        cplx rhs = -4.0 * lambda * W(u);
        CHECK(std::abs(lhs - rhs) <= 1e-9 * std::max(1.0, std::abs(rhs)));
      }
    }
  }
}

TEST_CASE("sobolev estimate") {
  auto W = WeightFunction::bump(4.0, 2.0);
  auto d0 = sobolev_upper(W, 0, ReprDescriptor::discrete(6));
  CHECK(d0.direct_available);
  CHECK(d0.ratio == doctest::Approx(1.0).epsilon(1e-12));

  auto d1 = sobolev_upper(W, 1, ReprDescriptor::discrete(6));
  CHECK(d1.direct_available);
  CHECK(std::isfinite(d1.direct));
  CHECK(d1.direct > 0);
  CHECK(d1.upper > 0);

  auto d2 = sobolev_upper(W, 2, ReprDescriptor::principal(13.7797));
  CHECK(d2.direct_available);
  CHECK(std::isfinite(d2.ratio));
  CHECK(d2.ratio > 0);

  auto d4 = sobolev_upper(W, 4, ReprDescriptor::discrete(1));
  CHECK_FALSE(d4.direct_available);
  CHECK(d4.upper > 0);
}

TEST_CASE("orthonormality defect, discrete closed forms") {
  QuadratureSpec quad;
  quad.node_count = 800;
  CHECK(orthonormality_defect(WhittakerParams(6, ReprDescriptor::discrete(6)),
                              quad) < 1e-8);
  CHECK(orthonormality_defect(WhittakerParams(3, ReprDescriptor::discrete(1)),
                              quad) < 1e-8);
}

TEST_CASE("orthonormality defect, principal series") {
  QuadratureSpec quad;
  quad.node_count = 1600;
  CHECK(orthonormality_defect(WhittakerParams(0, ReprDescriptor::principal(5.0)),
                              quad) < 1e-6);
}

TEST_CASE("bound sweeps stay finite") {
  WhittakerParams disc(6, ReprDescriptor::discrete(6));

  std::vector<double> big;
  for (double u = 1; u <= 1000; u *= 1.3) big.push_back(u);
  auto largeu = bound_sweep(disc, BoundRegime::LargeU, big);
  CHECK(largeu.sup > 0);
  CHECK(std::isfinite(largeu.sup));

  std::vector<double> small;
  for (double u = 1e-6; u <= 1; u *= 1.7) small.push_back(u);
  for (int p = 1; p <= 10; ++p) {
    auto s = bound_sweep(WhittakerParams(p, ReprDescriptor::discrete(1)),
                         BoundRegime::SmallU, small);
    CHECK(std::isfinite(s.sup));
  }

  auto ud = bound_sweep(WhittakerParams(2, ReprDescriptor::discrete(1)),
                        BoundRegime::LargeUD, {10.0});
  CHECK(ud.sup > 0);
  CHECK(ud.sup < 1.0);  // comfortable margin at u = 10

  CHECK_THROWS_AS(bound_sweep(WhittakerParams(0, ReprDescriptor::principal(5)),
                              BoundRegime::LargeUD, {1.0}),
                  std::invalid_argument);
}

TEST_CASE("convolution identity") {
  QuadratureSpec quad;
  quad.node_count = 512;
  CHECK(convolution_identity_check(1, 1, 1.0, quad) < 1e-5);
  CHECK(convolution_identity_check(6, 6, 2.0, quad) < 1e-5);
  CHECK_THROWS_AS(convolution_identity_check(1, 0, 1.0, quad),
                  std::invalid_argument);
}
