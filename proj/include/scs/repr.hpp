#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

#include "scs/numeric.hpp"

namespace scs {

// An automorphic representation of the level-1 spectrum: discrete series
// (holomorphic form of weight 2*ell), principal series (Maass form, nu = iR),
// or a unitary Eisenstein parameter.
struct ReprDescriptor {
  enum class Kind { Discrete, Principal, Eisenstein };

  Kind kind = Kind::Discrete;
  int ell = 1;       // discrete series parameter, nu = ell - 1/2
  cplx nu{0.5, 0};   // spectral parameter, Re nu >= 0, Im nu >= 0
  double lambda_pi = 0;      // Laplacian eigenvalue 1/4 - nu^2
  double lambda_tilde = 1;   // 1 + |lambda_pi|

  static ReprDescriptor discrete(int ell) {
    if (ell < 1) throw std::invalid_argument("discrete series needs ell >= 1");
    ReprDescriptor r;
    r.kind = Kind::Discrete;
    r.ell = ell;
    r.nu = cplx(ell - 0.5, 0);
    r.lambda_pi = 0.25 - (ell - 0.5) * (ell - 0.5);
    r.lambda_tilde = 1 + std::abs(r.lambda_pi);
    return r;
  }

  static ReprDescriptor principal(double r_param) {
    ReprDescriptor r;
    r.kind = Kind::Principal;
    r.ell = 0;
    r.nu = cplx(0, std::abs(r_param));
    r.lambda_pi = 0.25 + r_param * r_param;
    r.lambda_tilde = 1 + r.lambda_pi;
    return r;
  }

  static ReprDescriptor eisenstein(double t) {
    if (t == 0) throw std::invalid_argument("eisenstein nu must be nonzero");
    ReprDescriptor r = principal(t);
    r.kind = Kind::Eisenstein;
    return r;
  }

  bool is_discrete() const { return kind == Kind::Discrete; }
};

}  // namespace scs
