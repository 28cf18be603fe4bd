#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "scs/hecke.hpp"
#include "scs/numeric.hpp"
#include "scs/weights.hpp"

namespace scs {

// Summation constraint: m + n = h or m - n = h.
enum class SumSign { Plus, Minus };

struct InsufficientSequenceError : std::length_error {
  using std::length_error::length_error;
};

// One shifted convolution sum
//   Sum_{m (+-) n = h} lambda_1(|m|) lambda_2(|n|) / sqrt|mn|
//                        W_1(m/Y) W_2(n/Y).
// The weights must have bounded support; the index window is Y times the
// support, so the sequences must reach Y * max|support| + h.
struct SumSpec {
  std::int64_t h = 1;
  double Y = 1;
  SumSign sign = SumSign::Plus;
  HeckeSequence seq1, seq2;
  WeightFunction W1, W2;

  SumSpec(std::int64_t h, double Y, SumSign sign, HeckeSequence seq1,
          HeckeSequence seq2, WeightFunction W1, WeightFunction W2);
};

// Cap on concurrent chunk workers (default: hardware concurrency).  The
// chunking and the reduction order are fixed, so every setting gives
// bit-identical results.
void set_thread_limit(int n);
int thread_limit();

// Evaluates the sum: streams ascending m over the W1 window in fixed 4096
// chunks (chunk partials are order-independent, so the parallel reduction is
// deterministic), compensated summation throughout.  When both sequences are
// the tau sequence, the run is audited against the termwise divisor bound
// |lambda(n)| <= d(n); a violation throws std::logic_error.
cplx direct_sum(const SumSpec& spec);

struct SumReport {
  cplx value{0, 0};
  double termwise_bound = 0;  // Sum of |term|, the triangle-inequality cap
};

SumReport direct_sum_report(const SumSpec& spec);

struct DirichletPartial {
  cplx value{0, 0};
  // termwise majorant of the discarded tail from |lambda(n)| <= d(n) n^theta
  // with theta = 7/64 and the exact constant in d(n) <= C n^delta; +inf when
  // the majorant series diverges at the given Re s
  double tail_bound = 0;
};

// Partial sum over n <= N, m = n + h of
//   lambda_1(m) lambda_2(n) (mn)^{(k-1)/2} / (m+n)^{s+k-1}.
DirichletPartial dirichlet_partial(std::int64_t h, cplx s, int k,
                                   std::int64_t N, const HeckeSequence& seq1,
                                   const HeckeSequence& seq2);

struct FitReport {
  struct PerShift {
    std::int64_t h = 0;
    double slope = 0;      // least-squares slope of log|S| against log Y
    double sup_ratio = 0;  // sup |S| / (h^{7/64} Y^{1/2} (hY)^{0.1})
    std::size_t points = 0;  // Y points with a nonvanishing sum
  };
  std::vector<PerShift> per_shift;
  double max_slope = 0;
  double sup_ratio = 0;
};

// Growth audit of the sum against h^{7/64} Y^{1/2} (hY)^{0.1} over an
// (h, Y) grid; Y_list must be geometric with at least 6 points.  Throws
// std::runtime_error when every sum of some shift vanishes.
FitReport growth_fit(const std::vector<std::int64_t>& h_list,
                     const std::vector<double>& Y_list, const SumSpec& tmpl);

}  // namespace scs
