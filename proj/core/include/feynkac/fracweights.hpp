#pragma once

#include <vector>

namespace feynkac {

/// Convolution-quadrature weight table for a fractional substantial operator
/// of order sigma, built from the generating function
///   (1 - z)^sigma * (1 + alpha/2 - (alpha/2) z)^(sigma/alpha).
/// The weights are tau-independent; the stepper applies the tau^(-sigma)
/// scale itself so one table serves every step size.
struct WeightTable {
  double alpha = 0.0;
  double sigma = 0.0;
  int n_max = 0;
  std::vector<double> weights;  // w_j for j = 0..n_max
};

/// Taylor coefficients of (1 - z)^s, i.e. c_j = (-1)^j * binom(s, j),
/// computed by the recurrence c_0 = 1, c_j = c_{j-1} * (1 - (s+1)/j).
std::vector<double> grunwald_coeffs(double s, int n);

/// Taylor coefficients of (1 - c*z)^s for 0 < c < 1.
std::vector<double> binomial_power_series(double s, double c, int n);

/// WSGD weights w_j^(sigma) for the fractional substantial derivative
/// (sigma = alpha) or integral (sigma = alpha - 1). Any real sigma is
/// accepted; for sigma = alpha the result reduces to the two-term form
/// w_j = ((alpha+2)/2) g_j - (alpha/2) g_{j-1}.
WeightTable fsd_weights(double alpha, double sigma, int n);

/// Two-term (0,-1)-shift WSGD rule applied directly at order sigma:
/// coefficients of (1 - z)^sigma (1 + sigma/2 - (sigma/2) z). Second-order
/// for any real sigma; equals fsd_weights(alpha, alpha, n) when
/// sigma = alpha. The stepper's source quadrature uses this family at
/// sigma = alpha - 1, which is what reproduces the reference convergence
/// tables (see README).
std::vector<double> two_term_wsgd_weights(double sigma, int n);

/// Cauchy (discrete convolution) product of two coefficient sequences,
/// truncated to the shorter length.
std::vector<double> cauchy_product(const std::vector<double>& a,
                                   const std::vector<double>& b);

}  // namespace feynkac
