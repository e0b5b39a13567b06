#pragma once

#include "feynkac/mesh_fem.hpp"

#include <complex>

namespace feynkac {

/// Evaluation guard rails for the Mittag-Leffler series.
struct MLParams {
  double alpha = 0.5;     // in (0, 1]
  double z_limit = 15.0;  // maximum |z| accepted
  double tol = 1e-14;     // term/sum truncation tolerance
};

/// One-parameter Mittag-Leffler function E_alpha(z) = sum_k z^k / Gamma(alpha k + 1).
/// Series evaluation; throws on |z| > z_limit or if the series has not
/// converged after 500 terms. The accumulation is carried internally in
/// extended precision so the alternating-series cancellation for z < 0
/// cannot contaminate the double-precision result.
Complex mittag_leffler(const MLParams& params, Complex z);

inline Complex mittag_leffler(double alpha, Complex z) {
  return mittag_leffler(MLParams{alpha}, z);
}

/// Closed-form reference solution for the constant-potential case
///   U == c, f == 0, G0 = sin(k pi x) on (0,1):
///   G(x,t) = e^{-t rho c} E_alpha(-(k pi)^2 t^alpha) sin(k pi x),
/// returned as the nodal interpolant on the given 1D mesh.
NodalField exact_constant_potential_solution(double alpha, Complex rho, double c,
                                             int k, double t, const Mesh& mesh);

}  // namespace feynkac
