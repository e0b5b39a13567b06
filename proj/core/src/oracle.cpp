#include "feynkac/oracle.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <numbers>
#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace feynkac {

namespace {

// 160 decimal digits cover the worst cancellation admitted by the default
// z_limit: at alpha = 0.5, |z| = 15 the largest series term is ~1e97 while
// the sum is O(1e-2).
using Big = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<160>>;

struct BigComplex {
  Big re, im;
};

BigComplex mul(const BigComplex& a, const BigComplex& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

Big abs2(const BigComplex& a) { return a.re * a.re + a.im * a.im; }

constexpr int kMaxTerms = 500;

// Gamma(alpha*k + 1) for k = 0..kMaxTerms, cached per alpha: the gamma
// calls dominate the cost and tests sweep many z per alpha.
const std::vector<Big>& gamma_table(double alpha) {
  static std::map<double, std::vector<Big>> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(alpha);
  if (it == cache.end()) {
    std::vector<Big> table(kMaxTerms + 1);
    for (int k = 0; k <= kMaxTerms; ++k) {
      table[k] = boost::math::tgamma(Big(alpha) * k + 1);
    }
    it = cache.emplace(alpha, std::move(table)).first;
  }
  return it->second;
}

}  // namespace

Complex mittag_leffler(const MLParams& params, Complex z) {
  if (!(params.alpha > 0.0 && params.alpha <= 1.0)) {
    throw std::invalid_argument("mittag_leffler: alpha must lie in (0,1]");
  }
  if (!(params.z_limit > 0.0)) {
    throw std::invalid_argument("mittag_leffler: z_limit must be > 0");
  }
  if (std::abs(z) > params.z_limit) {
    throw std::domain_error("mittag_leffler: |z| exceeds z_limit");
  }

  const auto& gammas = gamma_table(params.alpha);
  const BigComplex zb{Big(z.real()), Big(z.imag())};
  const Big tol2 = Big(params.tol) * Big(params.tol);

  BigComplex power{Big(1), Big(0)};  // z^k
  BigComplex sum{Big(0), Big(0)};
  for (int k = 0; k <= kMaxTerms; ++k) {
    const BigComplex term{power.re / gammas[k], power.im / gammas[k]};
    sum.re += term.re;
    sum.im += term.im;
    const Big sum2 = abs2(sum);
    if (k > 0 && abs2(term) <= tol2 * (sum2 > 0 ? sum2 : Big(1))) {
      return {static_cast<double>(sum.re), static_cast<double>(sum.im)};
    }
    power = mul(power, zb);
  }
  throw std::runtime_error("mittag_leffler: series did not converge within 500 terms");
}

NodalField exact_constant_potential_solution(double alpha, Complex rho, double c,
                                             int k, double t, const Mesh& mesh) {
  if (mesh.dim != 1) {
    throw std::invalid_argument(
        "exact_constant_potential_solution: requires a 1D mesh");
  }
  if (k < 1) {
    throw std::invalid_argument("exact_constant_potential_solution: k must be >= 1");
  }
  if (t < 0.0) {
    throw std::invalid_argument("exact_constant_potential_solution: t must be >= 0");
  }
  const double lambda = (k * std::numbers::pi) * (k * std::numbers::pi);
  const Complex amplitude =
      std::exp(-t * rho * c) * mittag_leffler(alpha, -lambda * std::pow(t, alpha));

  NodalField out;
  out.time = t;
  out.values.resize(mesh.n_free());
  for (int i = 0; i < mesh.n_free(); ++i) {
    const double x = mesh.node_coords[mesh.free_nodes[i]].x;
    out.values[i] = amplitude * std::sin(k * std::numbers::pi * x);
  }
  return out;
}

}  // namespace feynkac
