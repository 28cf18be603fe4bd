#pragma once

#include <map>

#include "scs/numeric.hpp"

namespace scs {

// Test weight families with closed-form derivatives.  All derivative
// evaluators are exact symbolic recurrences, never finite differences.
//
//   bump(c, w):           exp(-1/(1 - t^2)) with t = (u - c)/w, support [c-w, c+w]
//   exp_family(k, z):     u^{k/2} e^{-z u} on u > 0, zero for u <= 0
//   monomial_gauss(a, b): u e^{-(a u + b/u)/2} on u > 0, zero for u <= 0
//
// reflected() mirrors a weight to the negative axis: W-(u) = W(-u).
struct WeightFunction {
  enum class Family { Bump, ExpFamily, MonomialGauss };

  Family family = Family::Bump;
  double center = 0, width = 1;  // bump
  int k = 0;                     // exp_family
  cplx z{1, 0};                  // exp_family
  double a = 2, b = 2;           // monomial_gauss
  bool mirrored = false;
  double amplitude = 1.0;  // overall scalar factor
  double support_lo = 0, support_hi = 0;  // +-inf for an unbounded end

  static WeightFunction bump(double center, double width);
  static WeightFunction exp_family(int k, cplx z);
  static WeightFunction monomial_gauss(double a, double b);
  WeightFunction reflected() const;
  WeightFunction scaled(double c) const;

  // d^order W / du^order at u; order 0 is the value.  Supported to order 80.
  cplx derivative(double u, int order) const;
  cplx operator()(double u) const { return derivative(u, 0); }

  bool on_negative_axis() const { return mirrored; }
  // true when [lo, hi] is a genuine compact support interval
  bool compact() const { return family == Family::Bump; }
};

}  // namespace scs
