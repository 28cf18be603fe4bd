#pragma once

#include "scs/numeric.hpp"

namespace scs {

// Riemann zeta on C \ {1} by Euler-Maclaurin, with the functional equation
// for Re s < 1/2.  Relative accuracy ~1e-12 for |Im s| <= 100.
cplx zeta(cplx s);

// Completed zeta  Lambda(s) = pi^{-s/2} Gamma(s/2) zeta(s).
cplx zeta_completed(cplx s);

}  // namespace scs
