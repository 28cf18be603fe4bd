#include "scs/shifted_sum.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <future>
#include <limits>
#include <thread>

namespace scs {

namespace {

constexpr double kTheta = 7.0 / 64.0;
constexpr double kEps = 0.1;
constexpr std::int64_t kChunk = 4096;

std::int64_t required_length(const WeightFunction& W, double Y,
                             std::int64_t h) {
  double m = std::max(std::abs(W.support_lo), std::abs(W.support_hi));
  return static_cast<std::int64_t>(std::ceil(Y * m)) + h;
}

struct ChunkResult {
  Kahan<cplx> sum;
  Kahan<double> majorant;
  Kahan<double> abs_sum;
};

std::atomic<int> g_thread_limit{0};  // 0: not set yet, use hardware count

// sup_n d(n) / n^delta, exactly prod_p max_a (a+1) p^{-a delta}: the local
// factor exceeds 1 only for p < 2^{1/delta}, so the product is finite.
double divisor_constant(double delta) {
  double p_max = std::pow(2.0, 1.0 / delta);
  double prod = 1;
  for (int p = 2; p <= p_max; ++p) {
    bool prime = true;
    for (int q = 2; q * q <= p; ++q)
      if (p % q == 0) prime = false;
    if (!prime) continue;
    double best = 1, lp = std::log(static_cast<double>(p));
    for (int a = 1; a <= 512; ++a)
      best = std::max(best, (a + 1) * std::exp(-a * delta * lp));
    prod *= best;
  }
  return prod;
}

}  // namespace

SumSpec::SumSpec(std::int64_t h_, double Y_, SumSign sign_, HeckeSequence s1,
                 HeckeSequence s2, WeightFunction w1, WeightFunction w2)
    : h(h_),
      Y(Y_),
      sign(sign_),
      seq1(std::move(s1)),
      seq2(std::move(s2)),
      W1(std::move(w1)),
      W2(std::move(w2)) {
  if (h < 1) throw std::invalid_argument("SumSpec: h >= 1 required");
  if (Y <= 0) throw std::invalid_argument("SumSpec: Y > 0 required");
  if (!std::isfinite(W1.support_lo) || !std::isfinite(W1.support_hi) ||
      !std::isfinite(W2.support_lo) || !std::isfinite(W2.support_hi))
    throw std::invalid_argument("SumSpec: weights must have bounded support");
  if (seq1.n_max < required_length(W1, Y, h))
    throw InsufficientSequenceError(
        "SumSpec: seq1 shorter than Y * max|support(W1)| + h");
  if (seq2.n_max < required_length(W2, Y, h))
    throw InsufficientSequenceError(
        "SumSpec: seq2 shorter than Y * max|support(W2)| + h");
}

void set_thread_limit(int n) {
  if (n < 1) throw std::invalid_argument("set_thread_limit: n >= 1 required");
  g_thread_limit.store(n);
}

int thread_limit() {
  int n = g_thread_limit.load();
  if (n > 0) return n;
  unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

SumReport direct_sum_report(const SumSpec& sp) {
  std::int64_t m_lo = static_cast<std::int64_t>(std::ceil(sp.Y * sp.W1.support_lo));
  std::int64_t m_hi = static_cast<std::int64_t>(std::floor(sp.Y * sp.W1.support_hi));
  if (m_hi < m_lo) return {};

  bool audit = sp.seq1.source == HeckeSequence::Source::Tau &&
               sp.seq2.source == HeckeSequence::Source::Tau;
  const std::vector<std::int32_t>* dc = nullptr;
  if (audit)
    dc = &divisor_counts(std::max(sp.seq1.n_max, sp.seq2.n_max));

  auto run_chunk = [&](std::int64_t a, std::int64_t b) {
    ChunkResult r;
    for (std::int64_t m = a; m <= b; ++m) {
      if (m == 0) continue;
      std::int64_t n = sp.sign == SumSign::Plus ? sp.h - m : m - sp.h;
      if (n == 0) continue;
      double nY = static_cast<double>(n) / sp.Y;
      if (nY < sp.W2.support_lo || nY > sp.W2.support_hi) continue;
      cplx w1 = sp.W1(static_cast<double>(m) / sp.Y);
      cplx w2 = sp.W2(nY);
      double rs = 1.0 / std::sqrt(static_cast<double>(std::abs(m)) *
                                  static_cast<double>(std::abs(n)));
      cplx term = sp.seq1.at(std::abs(m)) * sp.seq2.at(std::abs(n)) * rs * w1 *
                  w2;
      r.sum.add(term);
      r.abs_sum.add(std::abs(term));
      if (audit)
        r.majorant.add(static_cast<double>((*dc)[std::abs(m)]) *
                       static_cast<double>((*dc)[std::abs(n)]) * rs *
                       std::abs(w1) * std::abs(w2));
    }
    return r;
  };

  std::int64_t count = m_hi - m_lo + 1;
  std::int64_t nchunks = (count + kChunk - 1) / kChunk;
  std::vector<ChunkResult> parts(nchunks);
  int workers = thread_limit();
  if (nchunks == 1 || workers <= 1) {
    for (std::int64_t c = 0; c < nchunks; ++c) {
      std::int64_t a = m_lo + c * kChunk;
      parts[c] = run_chunk(a, std::min(m_hi, a + kChunk - 1));
    }
  } else {
    // batches of at most `workers` concurrent chunks
    for (std::int64_t base = 0; base < nchunks; base += workers) {
      std::int64_t top = std::min(nchunks, base + workers);
      std::vector<std::future<ChunkResult>> futs;
      futs.reserve(top - base);
      for (std::int64_t c = base; c < top; ++c) {
        std::int64_t a = m_lo + c * kChunk;
        std::int64_t b = std::min(m_hi, a + kChunk - 1);
        futs.push_back(std::async(std::launch::async,
                                  [=, &run_chunk] { return run_chunk(a, b); }));
      }
      for (std::int64_t c = base; c < top; ++c) parts[c] = futs[c - base].get();
    }
  }

  Kahan<cplx> total;
  Kahan<double> maj;
  Kahan<double> absum;
  for (auto& p : parts) {  // fixed ascending-chunk combine: deterministic
    total.add(p.sum.get());
    maj.add(p.majorant.get());
    absum.add(p.abs_sum.get());
  }
  SumReport rep;
  rep.value = total.get();
  rep.termwise_bound = absum.get();
  if (audit && std::abs(rep.value) > maj.get() * (1 + 1e-9) + 1e-300)
    throw std::logic_error("direct_sum: divisor-bound audit failed");
  return rep;
}

cplx direct_sum(const SumSpec& sp) { return direct_sum_report(sp).value; }

DirichletPartial dirichlet_partial(std::int64_t h, cplx s, int k,
                                   std::int64_t N, const HeckeSequence& seq1,
                                   const HeckeSequence& seq2) {
  if (h < 1) throw std::invalid_argument("dirichlet_partial: h >= 1 required");
  if (N < h + 1)
    throw std::invalid_argument("dirichlet_partial: N >= h + 1 required");
  if (k < 0) throw std::invalid_argument("dirichlet_partial: k >= 0 required");
  if (seq1.n_max < N + h || seq2.n_max < N)
    throw InsufficientSequenceError("dirichlet_partial: sequences too short");

  double half = 0.5 * (k - 1);
  Kahan<cplx> acc;
  for (std::int64_t n = 1; n <= N; ++n) {
    std::int64_t m = n + h;
    double lmn = std::log(static_cast<double>(m)) +
                 std::log(static_cast<double>(n));
    double lsum = std::log(static_cast<double>(m + n));
    acc.add(seq1.at(m) * seq2.at(n) *
            std::exp(half * lmn - (s + static_cast<double>(k - 1)) * lsum));
  }

  // tail majorant from |lambda(j)| <= d(j) j^theta and d(j) <= C_delta j^delta:
  // the terms beyond N are below
  //   b(n) = C^2 ((n+h) n)^{half + theta + delta} (2n+h)^{-(sigma+k-1)},
  // which decays like n^{-q}, q = sigma - 2 theta - 2 delta; delta is picked
  // as a quarter of the room sigma - 1 - 2 theta so that q > 1
  DirichletPartial out;
  out.value = acc.get();
  double sigma = s.real();
  double delta = 0.25 * (sigma - 1.0 - 2.0 * kTheta);
  if (delta < 0.08) {
    out.tail_bound = std::numeric_limits<double>::infinity();
  } else {
    delta = std::min(delta, 0.4);
    double C = divisor_constant(delta);
    double q = sigma - 2.0 * kTheta - 2.0 * delta;
    double n1 = static_cast<double>(N + 1);
    double logb = 2.0 * std::log(C) +
                  (half + kTheta + delta) * (std::log(n1 + h) + std::log(n1)) -
                  (sigma + k - 1) * std::log(2 * n1 + h);
    // b(N+1) + integral comparison for the monotone remainder
    out.tail_bound = std::exp(logb) * (1.0 + n1 / (q - 1.0));
  }
  return out;
}

FitReport growth_fit(const std::vector<std::int64_t>& h_list,
                     const std::vector<double>& Y_list, const SumSpec& tmpl) {
  if (Y_list.size() < 6)
    throw std::invalid_argument("growth_fit: need at least 6 Y points");
  double ratio = Y_list[1] / Y_list[0];
  for (std::size_t i = 1; i + 1 < Y_list.size(); ++i)
    if (std::abs(Y_list[i + 1] / Y_list[i] - ratio) > 1e-6 * ratio)
      throw std::invalid_argument("growth_fit: Y_list must be geometric");
  if (h_list.empty())
    throw std::invalid_argument("growth_fit: empty shift list");

  FitReport rep;
  for (std::int64_t h : h_list) {
    FitReport::PerShift ps;
    ps.h = h;
    // accumulate the normal equations for log|S| against log Y
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (double Y : Y_list) {
      SumSpec sp(h, Y, tmpl.sign, tmpl.seq1, tmpl.seq2, tmpl.W1, tmpl.W2);
      double S = std::abs(direct_sum(sp));
      double bound = std::pow(static_cast<double>(h), kTheta) * std::sqrt(Y) *
                     std::pow(h * Y, kEps);
      ps.sup_ratio = std::max(ps.sup_ratio, S / bound);
      if (S < 1e-300) continue;
      double x = std::log(Y), y = std::log(S);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
      ++ps.points;
    }
    if (ps.points < 2)
      throw std::runtime_error("growth_fit: degenerate fit, sums vanish");
    double n = static_cast<double>(ps.points);
    ps.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    rep.max_slope = std::max(rep.max_slope, ps.slope);
    rep.sup_ratio = std::max(rep.sup_ratio, ps.sup_ratio);
    rep.per_shift.push_back(ps);
  }
  return rep;
}

}  // namespace scs
