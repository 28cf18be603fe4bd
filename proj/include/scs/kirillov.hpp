#pragma once

#include <map>
#include <vector>

#include "scs/numeric.hpp"
#include "scs/special.hpp"
#include "scs/weights.hpp"

namespace scs {

// ---------------------------------------------------------------------------
// A^d norms
// ---------------------------------------------------------------------------

struct NormTerm {
  int j = 0;
  double integral = 0;  // int (|u|+|u|^{-1})^d |W^{(j)}|^2 d^x u
};

struct NormReport {
  int d = 0;
  double value = 0;  // Sum_j sqrt(term_j)
  std::vector<NormTerm> terms;
  bool convergent = true;
};

struct AdNormDivergence : std::domain_error {
  int j;          // offending derivative order
  AdNormDivergence(int j_, const std::string& msg)
      : std::domain_error(msg), j(j_) {}
};

// ||W||_{A^d} = Sum_{j=0}^{d} ( int (|u|+|u|^{-1})^d |d^j W/du^j|^2 d^x u )^{1/2}.
// Throws AdNormDivergence when a term provably diverges at u -> 0
// (exp_family with k - 2j - d <= 0).
NormReport ad_norm(const WeightFunction& W, int d);

// ---------------------------------------------------------------------------
// Lie-algebra action on the Kirillov model
// ---------------------------------------------------------------------------

enum class LieOp { H, R, L };

// An operator Sum_m c_m(u) d^m/du^m with Laurent-polynomial coefficients.
struct DiffOperator {
  // coeff[m] maps u-exponent -> coefficient
  std::vector<std::map<int, cplx>> coeff;

  static DiffOperator identity();
  // H = 2u d/du;  R = 2 pi i u;  L = (2 pi i)^{-1} (-lambda u^{-1} - u d^2/du^2)
  static DiffOperator lie(LieOp op, double lambda);

  DiffOperator compose(const DiffOperator& rhs) const;  // (*this) after rhs
  DiffOperator operator*(double s) const;
  DiffOperator operator+(const DiffOperator& rhs) const;

  cplx apply(const WeightFunction& W, double u) const;
  int max_order() const { return static_cast<int>(coeff.size()) - 1; }
};

std::vector<cplx> lie_apply(LieOp op, const WeightFunction& W, double lambda,
                            const std::vector<double>& grid);

// ---------------------------------------------------------------------------
// Sobolev estimate
// ---------------------------------------------------------------------------

struct SobolevReport {
  double upper = 0;   // lambda_tilde^d * ||W||_{A^{2d}}
  double direct = 0;  // sum over monomials in {H,R,L} of order <= d (d <= 3)
  bool direct_available = false;
  double ratio = 0;   // direct / upper when available
};

SobolevReport sobolev_upper(const WeightFunction& W, int d,
                            const ReprDescriptor& repr);

// ---------------------------------------------------------------------------
// Whittaker-basis checks
// ---------------------------------------------------------------------------

// | int_{R^x} |~W_{p,pi}(u)|^2 d^x u  -  1 |
double orthonormality_defect(const WhittakerParams& params,
                             const QuadratureSpec& quad);

enum class BoundRegime { LargeU, SmallU, LargeUD };

struct FittedConstant {
  double sup = 0;       // sup over the grid of |~W(u)| / rhs(u)
  double arg_sup = 0;   // u attaining the sup
  std::size_t grid_points = 0;
};

// rhs by regime (y0 = |p|+|nu|+1, eps = 0.1):
//   LargeU:  |u|^{1/2} (|u|/y0)^{-1-Re nu} exp(-|u|/y0)
//   SmallU:  discrete: |p|^{1/2} |3 p u|^{1/2-eps};  principal: y0 |u|^{1/2-eps}
//   LargeUD: |3p|^{l+3/2} |u|^{-l-1}   (discrete only)
FittedConstant bound_sweep(const WhittakerParams& params, BoundRegime regime,
                           const std::vector<double>& grid);

// |LHS - RHS| of  ~W_{p,pi}(u) = (-1)^p int_0^inf j_{l-1/2}(y) ~W_{p,pi}(y/u) d^x y
// for the discrete series, with the integral split at y = |3pu| and panelled
// between consecutive zeros of J_{2l-1}(4 pi sqrt(y)).
double convolution_identity_check(int ell, int p, double u,
                                  const QuadratureSpec& quad);

}  // namespace scs
