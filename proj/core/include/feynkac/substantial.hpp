#pragma once

#include "feynkac/mesh_fem.hpp"

#include <Eigen/Dense>

#include <complex>

namespace feynkac {

/// Table of the nodal tempering factors e^{-t_j * rho * U(x_i)} on the
/// uniform time grid t_j = j*tau. Logical entry (j, i) is exposed through
/// operator(); storage is one contiguous column per time level so the
/// history sums stream through memory.
struct ExpFactorTable {
  Complex rho;
  Eigen::VectorXd u_values;  // U at the free nodes
  double tau = 0.0;
  int n_max = 0;
  Eigen::MatrixXcd factors;  // n_free x (n_max+1); column j = e^{-t_j rho u}

  Complex operator()(int j, int i) const { return factors(i, j); }
  auto column(int j) const { return factors.col(j); }
};

/// Builds the factor table by direct complex exponentiation of each entry.
/// Throws std::overflow_error if any exponent real part exceeds 700 (the
/// magnitude would leave double range).
ExpFactorTable build_factors(Complex rho, const Eigen::VectorXd& u, double tau,
                             int n_max);

/// Elementwise product of factor row j with a nodal field; out-of-place.
NodalField apply_factor(const ExpFactorTable& table, int j, const NodalField& v);

}  // namespace feynkac
