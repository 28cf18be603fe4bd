#include "scs/hecke.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace scs {

namespace {

int128 checked_add(int128 a, int128 b) {
  int128 r;
  if (__builtin_add_overflow(a, b, &r))
    throw std::overflow_error("tau_exact: 128-bit coefficient overflow");
  return r;
}

int128 checked_mul(int128 a, int128 b) {
  int128 r;
  if (__builtin_mul_overflow(a, b, &r))
    throw std::overflow_error("tau_exact: 128-bit coefficient overflow");
  return r;
}

}  // namespace

std::vector<int128> tau_exact(std::int64_t n_max) {
  if (n_max < 1) throw std::invalid_argument("tau_exact: n_max >= 1 required");
  if (n_max > 10000000)
    throw std::invalid_argument("tau_exact: n_max <= 1e7 supported");
  // Jacobi: prod (1-q^n)^3 = Sum_{k>=0} (-1)^k (2k+1) q^{k(k+1)/2}
  std::vector<std::pair<std::int64_t, int128>> jacobi;
  for (std::int64_t k = 0;; ++k) {
    std::int64_t e = k * (k + 1) / 2;
    if (e >= n_max) break;
    jacobi.emplace_back(e, (k % 2 ? -1 : 1) * (2 * k + 1));
  }
  // coefficients of prod (1-q^n)^{24} = (jacobi series)^8, truncated below n_max
  std::vector<int128> c(n_max, 0), next(n_max);
  c[0] = 1;
  for (int pass = 0; pass < 8; ++pass) {
    std::fill(next.begin(), next.end(), int128(0));
    for (auto [e, a] : jacobi)
      for (std::int64_t n = 0; n + e < n_max; ++n)
        if (c[n] != 0)
          next[n + e] = checked_add(next[n + e], checked_mul(a, c[n]));
    c.swap(next);
  }
  // tau(n) = coefficient of q^{n-1} in the product, shifted by the leading q
  std::vector<int128> tau(n_max + 1, 0);
  for (std::int64_t n = 1; n <= n_max; ++n) tau[n] = c[n - 1];
  return tau;
}

HeckeSequence tau_sequence(std::int64_t n_max) {
  auto tau = tau_exact(n_max);
  HeckeSequence seq;
  seq.source = HeckeSequence::Source::Tau;
  seq.n_max = n_max;
  seq.values.resize(n_max + 1);
  for (std::int64_t n = 1; n <= n_max; ++n) {
    double t = static_cast<double>(tau[n]);
    seq.values[n] = cplx(t * std::pow(static_cast<double>(n), -5.5), 0);
  }
  return seq;
}

cplx eisenstein_lambda(cplx nu, std::int64_t n) {
  if (n < 1) throw std::invalid_argument("eisenstein_lambda: n >= 1 required");
  Kahan<cplx> acc;
  for (std::int64_t a = 1; a * a <= n; ++a) {
    if (n % a) continue;
    std::int64_t b = n / a;
    // (a/b)^nu + (b/a)^nu, once when a == b
    double lr = std::log(static_cast<double>(a) / static_cast<double>(b));
    acc.add(std::exp(nu * lr));
    if (a != b) acc.add(std::exp(-nu * lr));
  }
  return acc.get();
}

HeckeSequence eisenstein_sequence(cplx nu, std::int64_t n_max) {
  HeckeSequence seq;
  seq.source = HeckeSequence::Source::Divisor;
  seq.nu = nu;
  seq.n_max = n_max;
  seq.values.resize(n_max + 1);
  for (std::int64_t n = 1; n <= n_max; ++n)
    seq.values[n] = eisenstein_lambda(nu, n);
  return seq;
}

const std::vector<std::int32_t>& divisor_counts(std::int64_t n_max) {
  static std::map<std::int64_t, std::vector<std::int32_t>> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.lower_bound(n_max);
  if (it != cache.end()) return it->second;
  std::vector<std::int32_t> d(n_max + 1, 0);
  for (std::int64_t i = 1; i <= n_max; ++i)
    for (std::int64_t j = i; j <= n_max; j += i) d[j]++;
  return cache.emplace(n_max, std::move(d)).first->second;
}

std::pair<ReprDescriptor, HeckeSequence> maass_ingest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MaassIngestError("maass_ingest: cannot open " + path);
  std::string line;
  int lineno = 0;
  double R = 0;
  bool have_r = false, have_parity = false;
  std::vector<double> lam{0.0};  // 1-based
  auto fail = [&](const std::string& msg) -> void {
    throw MaassIngestError("maass_ingest: " + path + ":" +
                           std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    std::string trimmed = line.substr(line.find_first_not_of(" \t") ==
                                              std::string::npos
                                          ? line.size()
                                          : line.find_first_not_of(" \t"));
    if (trimmed.empty() || trimmed[0] == '#') continue;
    std::istringstream ss(trimmed);
    if (!have_r) {
      std::string key;
      if (!(ss >> key >> R) || key != "R") fail("expected 'R <decimal>'");
      have_r = true;
      continue;
    }
    if (!have_parity) {
      std::string key, val;
      if (!(ss >> key >> val) || key != "parity" ||
          (val != "even" && val != "odd"))
        fail("expected 'parity <even|odd>'");
      have_parity = true;
      continue;
    }
    std::int64_t n;
    double v;
    if (!(ss >> n >> v)) fail("expected '<n> <lambda>'");
    if (n != static_cast<std::int64_t>(lam.size()))
      fail("coefficient index must increase by 1 (got " + std::to_string(n) +
           ")");
    lam.push_back(v);
  }
  if (!have_r || !have_parity || lam.size() < 2)
    fail("incomplete file: need R, parity and at least lambda(1)");

  std::int64_t n_max = static_cast<std::int64_t>(lam.size()) - 1;
  if (std::abs(lam[1] - 1.0) > 1e-9)
    throw MaassIngestError("maass_ingest: validation failed: lambda(1) = " +
                           std::to_string(lam[1]) + " != 1");
  // Hecke relation lambda(m) lambda(n) = Sum_{d | gcd(m,n)} lambda(mn/d^2)
  for (std::int64_t m = 2; m <= n_max; ++m) {
    for (std::int64_t n = m; m * n <= n_max; ++n) {
      double rhs = 0;
      std::int64_t g = std::gcd(m, n);
      for (std::int64_t d = 1; d <= g; ++d)
        if (g % d == 0) rhs += lam[m * n / (d * d)];
      if (std::abs(lam[m] * lam[n] - rhs) > 1e-9)
        throw MaassIngestError(
            "maass_ingest: validation failed: Hecke relation at (m,n) = (" +
            std::to_string(m) + "," + std::to_string(n) + ")");
    }
  }

  HeckeSequence seq;
  seq.source = HeckeSequence::Source::MaassFile;
  seq.n_max = n_max;
  seq.values.resize(n_max + 1);
  for (std::int64_t n = 1; n <= n_max; ++n) seq.values[n] = cplx(lam[n], 0);
  return {ReprDescriptor::principal(R), seq};
}

AuditReport bound_audit(const HeckeSequence& seq, double theta) {
  if (theta < 0 || theta > 0.5)
    throw std::invalid_argument("bound_audit: theta in [0, 1/2] required");
  AuditReport rep;
  rep.theta = theta;
  const auto& d = divisor_counts(seq.n_max);
  Kahan<double> sq;
  for (std::int64_t n = 1; n <= seq.n_max; ++n) {
    double bound = d[n] * std::pow(static_cast<double>(n), theta);
    double ratio = std::abs(seq.values[n]) / bound;
    if (ratio > rep.max_ratio) rep.max_ratio = ratio;
    // 1e-12 slack absorbs the float rounding of the normalization itself
    if (ratio > 1 + 1e-12 && rep.first_violation == 0) rep.first_violation = n;
    sq.add(std::norm(seq.values[n]));
    double mom = sq.get() / std::pow(static_cast<double>(n), 1.1);
    if (mom > rep.second_moment_ratio) rep.second_moment_ratio = mom;
  }
  return rep;
}

}  // namespace scs
