#pragma once

#include <complex>

#include "errors.hpp"
#include "geometry.hpp"

namespace fermicav {

struct QuadratureResult {
  std::complex<double> value;
  double error_estimate;
  long evaluations;
};

// Exact Bogoliubov coefficient A_mn = (psi_n, psihat_m) between the Minkowski
// mode n and the Rindler mode m on the t = 0 surface, by global-adaptive
// bisection with a Gauss-Kronrod 7/15 panel rule. The initial panel count is
// floored proportionally to the total oscillation |Omega_m| ln(b/a) +
// |omega_n| delta across the cavity. The boundary phase theta enters both
// spinor components and cancels in the sum; the result is real up to
// rounding. Throws QuadratureError if abs_tol cannot be certified.
QuadratureResult exact_coefficient(const CavityGeometry& geom, int m, int n,
                                   double abs_tol = 1e-11);

}  // namespace fermicav
