#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "scs/numeric.hpp"
#include "scs/repr.hpp"

namespace scs {

using int128 = __int128;

// A normalized Hecke eigenvalue sequence lambda(1..n_max), lambda(1) = 1.
struct HeckeSequence {
  enum class Source { Tau, Divisor, MaassFile };

  Source source = Source::Tau;
  std::int64_t n_max = 0;
  std::vector<cplx> values;  // index n, values[0] unused
  cplx nu{0, 0};             // divisor-sum parameter (Divisor source only)

  cplx at(std::int64_t n) const {
    if (n < 1 || n > n_max)
      throw std::out_of_range("HeckeSequence: index outside [1, n_max]");
    return values[n];
  }
};

// Exact integer tau(n) for n <= n_max via the cube of Jacobi's series,
// Delta = q (Sum_k (-1)^k (2k+1) q^{k(k+1)/2})^8.  Throws std::overflow_error
// if a coefficient would exceed 128-bit range.
std::vector<int128> tau_exact(std::int64_t n_max);

// lambda_Delta(n) = tau(n) / n^{11/2}
HeckeSequence tau_sequence(std::int64_t n_max);

// Sum over ab = n of (a/b)^nu, nu purely imaginary.
cplx eisenstein_lambda(cplx nu, std::int64_t n);
HeckeSequence eisenstein_sequence(cplx nu, std::int64_t n_max);

// d(n) for n = 1..n_max by sieve.
const std::vector<std::int32_t>& divisor_counts(std::int64_t n_max);

// Maass-form data file: line 1 "R <decimal>", line 2 "parity <even|odd>",
// then "<n> <lambda>" with increasing n from 1; '#' starts a comment.
// Validates lambda(1) = 1 and the Hecke relations to 1e-9.
struct MaassIngestError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
std::pair<ReprDescriptor, HeckeSequence> maass_ingest(const std::string& path);

struct AuditReport {
  double theta = 0;
  double max_ratio = 0;            // max_n |lambda(n)| / (d(n) n^theta)
  std::int64_t first_violation = 0;  // 0 when none
  double second_moment_ratio = 0;  // max_x Sum_{n<=x}|lambda(n)|^2 / x^{1.1}
};

AuditReport bound_audit(const HeckeSequence& seq, double theta);

}  // namespace scs
