#include "scs/shifted_sum.hpp"

#include <cmath>

#include "doctest.h"
#include "scs/automorphic.hpp"
#include "scs/hecke.hpp"

using namespace scs;

namespace {

// exhaustive 2D enumeration over a box, no streaming window logic shared
// with the implementation
cplx brute_sum(const SumSpec& sp, std::int64_t box) {
  Kahan<cplx> acc;
  for (std::int64_t m = -box; m <= box; ++m) {
    if (m == 0) continue;
    for (std::int64_t n = -box; n <= box; ++n) {
      if (n == 0) continue;
      bool match = sp.sign == SumSign::Plus ? (m + n == sp.h) : (m - n == sp.h);
      if (!match) continue;
      cplx w1 = sp.W1(m / sp.Y), w2 = sp.W2(n / sp.Y);
      if (w1 == cplx(0, 0) || w2 == cplx(0, 0)) continue;
      acc.add(sp.seq1.at(std::llabs(m)) * sp.seq2.at(std::llabs(n)) /
              std::sqrt(static_cast<double>(std::llabs(m) * std::llabs(n))) *
              w1 * w2);
    }
  }
  return acc.get();
}

}  // namespace

TEST_CASE("direct sum equals exhaustive enumeration") {
  auto seq = tau_sequence(64);
  auto W1 = WeightFunction::bump(3.0, 1.5);
  auto W2 = WeightFunction::bump(2.5, 1.4).reflected();
  for (std::int64_t h : {1, 2, 5}) {
    for (double Y : {1.0, 2.0, 3.5}) {
      SumSpec sp(h, Y, SumSign::Plus, seq, seq, W1, W2);
      cplx ref = brute_sum(sp, 30);
      cplx got = direct_sum(sp);
      CHECK(std::abs(got - ref) <= 1e-14 * std::max(1.0, std::abs(ref)));
    }
  }
  // minus constraint with both weights on the positive axis
  SumSpec sm(2, 2.0, SumSign::Minus, seq, seq, W1,
             WeightFunction::bump(2.5, 1.4));
  CHECK(std::abs(direct_sum(sm) - brute_sum(sm, 30)) < 1e-14);
}

TEST_CASE("empty index window gives exact zero") {
  auto seq = tau_sequence(128);
  auto W = WeightFunction::bump(1.5, 0.5);  // support [1, 2]
  // m, n >= Y but m + n = 1: impossible
  SumSpec sp(1, 5.0, SumSign::Plus, seq, seq, W, W);
  CHECK(direct_sum(sp) == cplx(0, 0));
}

TEST_CASE("direct sum is linear in each weight") {
  auto seq = tau_sequence(64);
  auto W1 = WeightFunction::bump(3.0, 1.5);
  auto W2 = WeightFunction::bump(2.5, 1.4).reflected();
  SumSpec sp(2, 3.0, SumSign::Plus, seq, seq, W1, W2);
  SumSpec sp1(2, 3.0, SumSign::Plus, seq, seq, W1.scaled(3.5), W2);
  SumSpec sp2(2, 3.0, SumSign::Plus, seq, seq, W1, W2.scaled(-2.0));
  cplx base = direct_sum(sp);
  CHECK(std::abs(direct_sum(sp1) - 3.5 * base) <= 1e-14 * std::abs(base));
  CHECK(std::abs(direct_sum(sp2) + 2.0 * base) <= 1e-14 * std::abs(base));
}

TEST_CASE("swap symmetry under m + n = h") {
  auto seq1 = tau_sequence(64);
  auto seq2 = eisenstein_sequence(cplx(0, 1), 64);
  auto W1 = WeightFunction::bump(3.0, 1.5);
  auto W2 = WeightFunction::bump(2.5, 1.4).reflected();
  SumSpec a(3, 2.0, SumSign::Plus, seq1, seq2, W1, W2);
  SumSpec b(3, 2.0, SumSign::Plus, seq2, seq1, W2, W1);
  cplx va = direct_sum(a), vb = direct_sum(b);
  CHECK(std::abs(va - vb) <= 1e-15 * std::max(1.0, std::abs(va)));
}

TEST_CASE("construction fails loudly") {
  auto seq = tau_sequence(16);
  auto W = WeightFunction::bump(1.5, 0.5);
  CHECK_THROWS_AS(SumSpec(1, 100.0, SumSign::Plus, seq, seq, W, W),
                  InsufficientSequenceError);
  CHECK_THROWS_AS(SumSpec(1, 1.0, SumSign::Plus, seq, seq,
                          WeightFunction::exp_family(4, cplx(1, 0)), W),
                  std::invalid_argument);
  CHECK_THROWS_AS(SumSpec(0, 1.0, SumSign::Plus, seq, seq, W, W),
                  std::invalid_argument);
}

TEST_CASE("divisor-bound audit rejects forged eigenvalues") {
  auto seq = tau_sequence(64);
  auto forged = seq;
  forged.values[5] = 1000.0;  // way past d(5) = 2
  auto W1 = WeightFunction::bump(3.0, 1.5);
  auto W2 = WeightFunction::bump(2.5, 1.4).reflected();
  SumSpec sp(2, 2.0, SumSign::Plus, forged, seq, W1, W2);
  CHECK_THROWS_AS(direct_sum(sp), std::logic_error);
}

TEST_CASE("direct sum agrees with the period integral") {
  auto seq = tau_sequence(64);
  auto W1 = WeightFunction::bump(3.0, 1.5);
  auto W2 = WeightFunction::bump(2.5, 1.4).reflected();
  auto repr = ReprDescriptor::discrete(6);
  auto v1 = cusp_vector(repr, seq, W1);
  auto v2 = cusp_vector(repr, seq, W2);
  for (std::int64_t h : {1, 2, 3, 4}) {
    for (double Y : {0.5, 1.0, 2.0}) {
      cplx direct = direct_sum(SumSpec(h, Y, SumSign::Plus, seq, seq, W1, W2));
      cplx period = period_integral(v1, v2, h, Y);
      CHECK(std::abs(direct - period) <=
            1e-9 * std::max(1.0, std::abs(direct)));
    }
  }
}

TEST_CASE("dirichlet partial sums and tail bounds") {
  auto seq = tau_sequence(4200);
  auto a = dirichlet_partial(1, cplx(2, 0), 0, 1000, seq, seq);
  auto b = dirichlet_partial(1, cplx(2, 0), 0, 2000, seq, seq);
  CHECK(std::isfinite(a.tail_bound));
  CHECK(std::abs(b.value - a.value) < a.tail_bound);
  CHECK(b.tail_bound < a.tail_bound);  // tail shrinks with N
  // complex s
  auto c = dirichlet_partial(2, cplx(2.5, 1.0), 0, 1000, seq, seq);
  CHECK(std::isfinite(std::abs(c.value)));
  CHECK(c.tail_bound < a.tail_bound);
}

TEST_CASE("damped variant stays bounded at Re s just above 1/2") {
  // (sqrt(mn)/(m+n))^{100} damping: k = 101 with the exponent shifted back
  auto seq = tau_sequence(4200);
  auto a = dirichlet_partial(1, cplx(0.51, 0), 101, 1000, seq, seq);
  auto b = dirichlet_partial(1, cplx(0.51, 0), 101, 2000, seq, seq);
  auto c = dirichlet_partial(1, cplx(0.51, 0), 101, 4000, seq, seq);
  // absolute-convergence majorant is useless here
  CHECK(std::isinf(a.tail_bound));
  // yet the damping keeps every partial minuscule and stable
  CHECK(std::abs(a.value) < 1e-25);
  CHECK(std::abs(b.value - a.value) < 1e-28);
  CHECK(std::abs(c.value - b.value) < 1e-28);
}

TEST_CASE("growth audit over a geometric Y ladder") {
  auto seq = tau_sequence(70000);
  auto W1 = WeightFunction::bump(1.5, 0.5);
  auto W2 = WeightFunction::bump(1.5, 0.5).reflected();
  SumSpec tmpl(1, 1.0, SumSign::Plus, seq, seq, W1, W2);
  std::vector<double> ys;
  for (int e = 7; e <= 15; ++e) ys.push_back(std::pow(2.0, e));
  auto rep = growth_fit({1, 2, 3}, ys, tmpl);
  REQUIRE(rep.per_shift.size() == 3);
  for (const auto& ps : rep.per_shift) {
    CHECK(ps.slope <= 0.6);
    CHECK(ps.points >= 8);
    CHECK(std::isfinite(ps.sup_ratio));
  }
  CHECK(rep.max_slope <= 0.6);
}

TEST_CASE("growth audit on divisor sums reports a raw slope") {
  // lambda(n) = d(n): every term is positive, so the sum carries its
  // slowly growing main term (no main-term removal, slope reported raw)
  auto seq = eisenstein_sequence(cplx(0, 0), 9000);
  auto W1 = WeightFunction::bump(1.5, 0.5);
  auto W2 = WeightFunction::bump(1.5, 0.5).reflected();
  SumSpec tmpl(1, 1.0, SumSign::Plus, seq, seq, W1, W2);
  std::vector<double> ys;
  for (int e = 5; e <= 12; ++e) ys.push_back(std::pow(2.0, e));
  auto rep = growth_fit({1}, ys, tmpl);
  CHECK(rep.per_shift[0].points == ys.size());  // no cancellation anywhere
  CHECK(std::isfinite(rep.per_shift[0].slope));
  CHECK(rep.per_shift[0].slope > 0);
}

TEST_CASE("growth audit input validation") {
  auto seq = tau_sequence(1024);
  auto W1 = WeightFunction::bump(1.5, 0.5);
  auto W2 = WeightFunction::bump(1.5, 0.5).reflected();
  SumSpec tmpl(1, 1.0, SumSign::Plus, seq, seq, W1, W2);
  CHECK_THROWS_AS(growth_fit({1}, {64.0}, tmpl), std::invalid_argument);
  CHECK_THROWS_AS(growth_fit({1}, {2, 4, 8, 16, 32, 65}, tmpl),
                  std::invalid_argument);
  // all-positive supports with m + n = h: every sum empty -> degenerate
  SumSpec dead(1, 1.0, SumSign::Plus, seq, seq, W1,
               WeightFunction::bump(1.5, 0.5));
  CHECK_THROWS_AS(growth_fit({1}, {2, 4, 8, 16, 32, 64}, dead),
                  std::runtime_error);
}
