#include "feynkac/fracweights.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace feynkac {

std::vector<double> grunwald_coeffs(double s, int n) {
  if (n < 0) {
    throw std::invalid_argument("grunwald_coeffs: n must be >= 0");
  }
  std::vector<double> c(static_cast<std::size_t>(n) + 1);
  c[0] = 1.0;
  for (int j = 1; j <= n; ++j) {
    c[j] = c[j - 1] * (1.0 - (s + 1.0) / j);
  }
  return c;
}

std::vector<double> binomial_power_series(double s, double c, int n) {
  if (!(c > 0.0 && c < 1.0)) {
    throw std::invalid_argument("binomial_power_series: c must lie in (0,1), got " +
                                std::to_string(c));
  }
  std::vector<double> out = grunwald_coeffs(s, n);
  double scale = 1.0;
  for (int j = 1; j <= n; ++j) {
    scale *= c;
    out[j] *= scale;
  }
  return out;
}

std::vector<double> cauchy_product(const std::vector<double>& a,
                                   const std::vector<double>& b) {
  const std::size_t len = std::min(a.size(), b.size());
  std::vector<double> out(len, 0.0);
  for (std::size_t j = 0; j < len; ++j) {
    double acc = 0.0;
    for (std::size_t k = 0; k <= j; ++k) {
      acc += a[k] * b[j - k];
    }
    out[j] = acc;
  }
  return out;
}

std::vector<double> two_term_wsgd_weights(double sigma, int n) {
  if (n < 0) {
    throw std::invalid_argument("two_term_wsgd_weights: n must be >= 0");
  }
  const std::vector<double> g = grunwald_coeffs(sigma, n);
  std::vector<double> w(static_cast<std::size_t>(n) + 1);
  w[0] = (sigma + 2.0) / 2.0 * g[0];
  for (int j = 1; j <= n; ++j) {
    w[j] = (sigma + 2.0) / 2.0 * g[j] - sigma / 2.0 * g[j - 1];
  }
  return w;
}

WeightTable fsd_weights(double alpha, double sigma, int n) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("fsd_weights: alpha must lie in (0,1)");
  }
  if (n < 0) {
    throw std::invalid_argument("fsd_weights: n must be >= 0");
  }
  // (1 + a/2 - (a/2) z)^(s/a) = (1 + a/2)^(s/a) * (1 - c z)^(s/a),
  // c = (a/2) / (1 + a/2) in (0,1) for a in (0,1).
  const double ratio = sigma / alpha;
  const double c = (alpha / 2.0) / (1.0 + alpha / 2.0);
  const double scale = std::pow(1.0 + alpha / 2.0, ratio);

  WeightTable table;
  table.alpha = alpha;
  table.sigma = sigma;
  table.n_max = n;
  table.weights = cauchy_product(grunwald_coeffs(sigma, n),
                                 binomial_power_series(ratio, c, n));
  for (double& w : table.weights) {
    w *= scale;
  }
  return table;
}

}  // namespace feynkac
