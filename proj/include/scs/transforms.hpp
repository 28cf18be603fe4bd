#pragma once

#include <cstdint>
#include <stdexcept>

#include "scs/numeric.hpp"

namespace scs {

// Smooth compactly supported cutoff G(t) = (t(1-t))^q on [0,1], zero beyond.
// Nonnegative, vanishes to order q at both endpoints, peak 4^{-q} at t = 1/2.
struct SmoothCutoff {
  int q = 1;
  explicit SmoothCutoff(int q);
  double operator()(double t) const;
};

// Default cutoff sharpness at derivative budget c: q = 21 + 4c.
int default_q(int c);

// Vertical contour Re z = 1 truncated at |Im z| <= z_max.  z_max = 0 lets the
// evaluator pick the smallest height whose certified tail is below
// tail_target; an explicit z_max that cannot meet the target raises
// ContourTailError carrying the height that would.
struct ContourSpec {
  double z_max = 0;
  double panel_width = 0.5;  // Gauss-Legendre panel width along the contour
  int nodes_per_panel = 16;
  double tail_target = 1e-10;
};

struct ContourTailError : std::runtime_error {
  double suggested_z_max;
  ContourTailError(double suggested, const std::string& msg)
      : std::runtime_error(msg), suggested_z_max(suggested) {}
};

// Laplace transform of the cutoff, int_0^1 (t(1-t))^q e^{zt} dt.  Entire in
// z; composite Gauss-Legendre with panel count scaled to |z| keeps the
// evaluation at 1e-12 for |z| <= 1e3.
cplx g_tilde(cplx z, int q);

// Measured constant in the decay bound |g_tilde(z)| <= C |z|^{-q-1} on the
// line Re z = 1: sup of |z|^{q+1}|g_tilde(z)| over a sweep up to |z| = 1e3,
// with a safety factor.  Cached per q.
double g_tilde_decay_constant(int q);

// Mellin-type moment int_0^1 (t(1-t))^q t^{s-2} dt in closed form
// Gamma(s+q-1) Gamma(q+1) / Gamma(s+2q).  Requires Re s > 1-q; beyond that
// half-plane the defining integral diverges and the gamma factor hits poles,
// so the call throws std::domain_error.
cplx g_hat(cplx s, int q);

// Separating kernel t^{k/2} e^{-zt}; zero for t < 0 by convention.
cplx w_k(double t, cplx z, int k);

// Whether the kernel passes the norm gate at derivative budget c: the
// A^{20+4c} norm of w_k(., z) is finite exactly when k > 60 + 12c.
bool separating_kernel_admissible(int k, int c);

struct SplitReport {
  double lhs = 0;        // (mn/Y^2)^{k/2} G((m+n)/Y)
  cplx rhs{0, 0};        // (2 pi i)^{-1} contour integral of g_tilde w_k w_k
  double residual = 0;   // |lhs - rhs|
  double z_max = 0;      // contour height actually used
  double tail_bound = 0; // certified truncation error of rhs
};

// Checks the splitting identity
//   (mn/Y^2)^{k/2} G((m+n)/Y)
//     = (2 pi i)^{-1} int_{Re z = 1} g_tilde(z) w_k(m/Y, z) w_k(n/Y, z) dz
// pointwise by contour quadrature.  q >= 7 keeps the contour tail tractable.
SplitReport split_identity_check(std::int64_t m, std::int64_t n, double Y, int k, int q,
                      const ContourSpec& contour = {});

}  // namespace scs
