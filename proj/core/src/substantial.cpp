#include "feynkac/substantial.hpp"

#include <cmath>
#include <stdexcept>

namespace feynkac {

ExpFactorTable build_factors(Complex rho, const Eigen::VectorXd& u, double tau,
                             int n_max) {
  if (!(tau > 0.0)) {
    throw std::invalid_argument("build_factors: tau must be > 0");
  }
  if (n_max < 0) {
    throw std::invalid_argument("build_factors: n_max must be >= 0");
  }
  ExpFactorTable table;
  table.rho = rho;
  table.u_values = u;
  table.tau = tau;
  table.n_max = n_max;
  table.factors.resize(u.size(), n_max + 1);

  for (int j = 0; j <= n_max; ++j) {
    const double t = j * tau;
    for (Eigen::Index i = 0; i < u.size(); ++i) {
      const Complex exponent = -t * rho * u[i];
      if (exponent.real() > 700.0) {
        throw std::overflow_error(
            "build_factors: exponent real part exceeds 700; "
            "e^{-t rho U} would overflow");
      }
      table.factors(i, j) = std::exp(exponent);
    }
  }
  return table;
}

NodalField apply_factor(const ExpFactorTable& table, int j, const NodalField& v) {
  if (j < 0 || j > table.n_max) {
    throw std::out_of_range("apply_factor: time index out of range");
  }
  if (v.values.size() != table.u_values.size()) {
    throw std::invalid_argument("apply_factor: field/table dimension mismatch");
  }
  NodalField out;
  out.time = v.time;
  out.values = table.factors.col(j).cwiseProduct(v.values);
  return out;
}

}  // namespace feynkac
