#include "scs/hecke.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>

#include "doctest.h"

using namespace scs;

namespace {

// tau(n) by brute-force expansion of q prod_{n}(1-q^n)^{24}, multiplying one
// binomial factor at a time.  Slow but entirely independent of the
// Jacobi-series route used by tau_exact.
std::vector<int128> tau_product_oracle(int n_max) {
  // binomial coefficients C(24, j) with alternating signs
  long long binom[25];
  binom[0] = 1;
  for (int j = 1; j <= 24; ++j) binom[j] = binom[j - 1] * (25 - j) / j;
  std::vector<int128> c(n_max, 0);
  c[0] = 1;
  for (int n = 1; n < n_max; ++n) {
    std::vector<int128> next(n_max, 0);
    for (int i = 0; i < n_max; ++i) {
      if (c[i] == 0) continue;
      for (int j = 0; j <= 24 && i + j * n < n_max; ++j)
        next[i + j * n] += (j % 2 ? -1 : 1) * int128(binom[j]) * c[i];
    }
    c.swap(next);
  }
  std::vector<int128> tau(n_max + 1, 0);
  for (int n = 1; n <= n_max; ++n) tau[n] = c[n - 1];
  return tau;
}

std::string write_temp(const std::string& name, const std::string& body) {
  std::string path = "/tmp/" + name;
  std::ofstream(path) << body;
  return path;
}

}  // namespace

TEST_CASE("tau classical values and multiplicativity instance") {
  auto tau = tau_exact(10);
  CHECK(static_cast<long long>(tau[1]) == 1);
  CHECK(static_cast<long long>(tau[2]) == -24);
  CHECK(static_cast<long long>(tau[3]) == 252);
  CHECK(static_cast<long long>(tau[6]) == -6048);
  CHECK(tau[6] == tau[2] * tau[3]);
}

TEST_CASE("tau against direct product expansion") {
  const int N = 200;
  auto fast = tau_exact(N);
  auto slow = tau_product_oracle(N);
  for (int n = 1; n <= N; ++n) CHECK(fast[n] == slow[n]);
}

TEST_CASE("tau multiplicativity exhaustive to 1e4") {
  const std::int64_t N = 10000;
  auto tau = tau_exact(N);
  for (std::int64_t m = 2; m * m <= N; ++m)
    for (std::int64_t n = m + 1; m * n <= N; ++n)
      if (std::gcd(m, n) == 1) CHECK(tau[m * n] == tau[m] * tau[n]);
}

TEST_CASE("tau Hecke relation at prime powers") {
  const std::int64_t N = 100000;
  auto tau = tau_exact(N);
  for (std::int64_t p : {2, 3, 5}) {
    int128 p11 = 1;
    for (int i = 0; i < 11; ++i) p11 *= p;
    for (std::int64_t pk = p; pk * p * p <= N; pk *= p)
      CHECK(tau[pk * p * p] == tau[p] * tau[pk * p] - p11 * tau[pk]);
  }
}

TEST_CASE("normalized lambda sequence") {
  auto seq = tau_sequence(1000);
  CHECK(seq.at(1) == cplx(1, 0));
  CHECK(seq.at(2).real() == doctest::Approx(-24.0 / std::pow(2.0, 5.5)).epsilon(1e-14));
  CHECK_THROWS_AS(seq.at(0), std::out_of_range);
  CHECK_THROWS_AS(seq.at(1001), std::out_of_range);
}

TEST_CASE("deligne and kim-sarnak audits on lambda_Delta") {
  auto seq = tau_sequence(100000);
  auto deligne = bound_audit(seq, 0.0);
  CHECK(deligne.first_violation == 0);
  CHECK(deligne.max_ratio <= 1.0 + 1e-12);
  auto ks = bound_audit(seq, 7.0 / 64);
  CHECK(ks.first_violation == 0);
  CHECK(ks.second_moment_ratio > 0);
}

TEST_CASE("divisor-sum eigenvalues") {
  CHECK(eisenstein_lambda(cplx(0, 0), 6).real() == doctest::Approx(4.0));
  CHECK(eisenstein_lambda(cplx(0, 2.7), 1) == cplx(1, 0));
  // prime: p^{it} + p^{-it} = 2 cos(t log p)
  double t = 1.3;
  cplx v = eisenstein_lambda(cplx(0, t), 7);
  CHECK(v.real() == doctest::Approx(2 * std::cos(t * std::log(7.0))).epsilon(1e-14));
  CHECK(std::abs(v.imag()) < 1e-15);
  // triangle inequality audit: |lambda(n)| <= d(n)
  auto seq = eisenstein_sequence(cplx(0, 1.0), 2000);
  auto rep = bound_audit(seq, 0.0);
  CHECK(rep.first_violation == 0);
}

TEST_CASE("divisor count sieve") {
  const auto& d = divisor_counts(100);
  CHECK(d[1] == 1);
  CHECK(d[6] == 4);
  CHECK(d[64] == 7);
  CHECK(d[97] == 2);
}

TEST_CASE("maass ingest accepts the shipped fixture") {
  auto [repr, seq] = maass_ingest(std::string(SCS_DATA_DIR) +
                                  "/maass_R13p7797_even.txt");
  CHECK(repr.kind == ReprDescriptor::Kind::Principal);
  CHECK(repr.nu.imag() == doctest::Approx(13.779751351891).epsilon(1e-12));
  CHECK(repr.lambda_pi == doctest::Approx(0.25 + 13.779751351891 * 13.779751351891));
  CHECK(seq.at(1) == cplx(1, 0));
  CHECK(seq.at(2).real() == doctest::Approx(1.54930447794).epsilon(1e-10));
  CHECK(seq.at(3).real() == doctest::Approx(0.24689977245).epsilon(1e-10));
  // ingested data satisfies lambda(4) = lambda(2)^2 - 1
  CHECK(seq.at(4).real() ==
        doctest::Approx(seq.at(2).real() * seq.at(2).real() - 1).epsilon(1e-9));
}

TEST_CASE("maass ingest rejects bad data") {
  auto p1 = write_temp("maass_bad_norm.txt",
                       "R 9.5\nparity even\n1 0.9\n2 1.0\n");
  CHECK_THROWS_AS(maass_ingest(p1), MaassIngestError);

  auto p2 = write_temp("maass_bad_hecke.txt",
                       "R 9.5\nparity even\n1 1.0\n2 1.2\n3 0.5\n4 0.3\n");
  CHECK_THROWS_AS(maass_ingest(p2), MaassIngestError);

  auto p3 = write_temp("maass_bad_parse.txt", "R 9.5\nparity sideways\n1 1.0\n");
  CHECK_THROWS_WITH_AS(maass_ingest(p3),
                       doctest::Contains("parity"), MaassIngestError);

  auto p4 = write_temp("maass_bad_gap.txt",
                       "R 9.5\nparity odd\n1 1.0\n3 0.5\n");
  CHECK_THROWS_AS(maass_ingest(p4), MaassIngestError);

  CHECK_THROWS_AS(maass_ingest("/nonexistent/nope.txt"), MaassIngestError);
}

TEST_CASE("bound audit flags an adversarial sequence") {
  HeckeSequence seq;
  seq.source = HeckeSequence::Source::MaassFile;
  seq.n_max = 3;
  seq.values = {cplx(0, 0), cplx(1, 0), cplx(3, 0), cplx(0.5, 0)};
  auto rep = bound_audit(seq, 0.0);
  CHECK(rep.first_violation == 2);
  CHECK(rep.max_ratio == doctest::Approx(1.5));
  CHECK_THROWS_AS(bound_audit(seq, 0.7), std::invalid_argument);
}
