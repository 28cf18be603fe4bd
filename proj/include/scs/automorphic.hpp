#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>

#include "scs/hecke.hpp"
#include "scs/numeric.hpp"
#include "scs/repr.hpp"
#include "scs/weights.hpp"

namespace scs {

// Thrown when the Fourier series cannot be truncated with a certified tail
// below 1e-12 of the leading term within the available Hecke range.
struct TruncationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A vector phi in an automorphic representation, held through its Fourier
// data: Hecke eigenvalues, the Kirillov-model function W_phi, and (for the
// continuous spectrum) the zeroth coefficient W_{phi,0}.
struct AutomorphicVector {
  ReprDescriptor repr;
  HeckeSequence hecke;
  std::function<cplx(double)> kirillov;        // W_phi(u), u != 0
  std::function<cplx(double)> constant_term;   // empty for cusp vectors
  // Nonincreasing-for-large-argument upper bound for |W_phi(+-v)|, v > 0;
  // drives the certified truncation of the Fourier sum.
  std::function<double(double)> envelope;
  // theta with |lambda(n)| <= d(n) n^theta (0 for the tau sequence,
  // |Re nu| for divisor sums)
  double coeff_growth = 0;
};

// Lowest-weight vector of the weight-12 discrete series (the form of
// Ramanujan tau): W_phi(u) = u^6 exp(-2 pi u) on u > 0.
AutomorphicVector delta_vector(std::int64_t n_max);

// Cusp vector with a prescribed Kirillov-model function of compact support
// (the unique smooth vector whose Kirillov function equals W).
AutomorphicVector cusp_vector(const ReprDescriptor& repr, HeckeSequence hecke,
                              const WeightFunction& W);

// Weight-0 vector of the continuous spectrum with spectral parameter nu,
// i.e. the classical series of parameter s = nu + 1/2 (any nu != 0 with
// Re(1 + 2 nu) allowing the zeta values below; real nu > 1/2 corresponds to
// an absolutely convergent coset sum).
AutomorphicVector eisenstein_vector(cplx nu, std::int64_t n_max);

// phi(n(x)a(u)) by the Fourier expansion, truncated with a certified tail
// below 1e-12 of the leading term.  Requires u >= 0.05.
cplx eval_vector(const AutomorphicVector& v, double x, double u);

// int_0^1 (phi_1 phi_2)(n(x)a(1/Y)) e(-h x) dx by the trapezoid rule on the
// unit period; the node count M exceeds every frequency present after
// truncation, so the rule is exact up to the certified tails.
cplx period_integral(const AutomorphicVector& v1, const AutomorphicVector& v2,
                     std::int64_t h, double Y,
                     const QuadratureSpec& quad = {});

struct UnfoldReport {
  double lhs = 0;  // integral of |phi|^2 E(., s) over the fundamental domain
  double rhs = 0;  // Dirichlet series times the Kirillov-side integral
  double tail_estimate = 0;  // height-truncation estimate for lhs
  bool tail_warning = false;  // set when tail_estimate > 1e-4
};

// Rankin-Selberg unfolding check for a pure-weight cusp vector:
//   <|phi|^2, E(., s)> = Sum_n |lambda(n)|^2 n^{-s} int |W(u)|^2 |u|^{s-1} d^x u
// with the left side integrated over {|x| <= 1/2, x^2 + u^2 >= 1, u <= T}.
UnfoldReport unfold_check(const AutomorphicVector& v, double s, double T,
                          const QuadratureSpec& quad = {});

// ||phi||^2 = int |phi|^2 dx du/u^2 over the fundamental domain, truncated at
// height T.
double norm_phi_sq(const AutomorphicVector& v, double T,
                   const QuadratureSpec& quad = {});

// vol of the quotient under the measure dx (du/u^2)(d theta/pi), derived as
// the reciprocal of the residue at s = 1 of the constant term of E(., s).
double quotient_volume();

struct CPiReport {
  double value = 0;
  double error_estimate = 0;
  bool slow_convergence = false;  // error estimate above 1% of the value
};

// Norm-proportionality constant between the automorphic and Kirillov-model
// inner products.  Continuous spectrum: pi^{-1} |zeta(1 + 2 nu)|^2 in closed
// form.  Cusp case (tau sequence only): vol times the smoothed second-moment
// average of the eigenvalues, Richardson-extrapolated, 1% accuracy target.
CPiReport c_pi(const AutomorphicVector& v);

}  // namespace scs
