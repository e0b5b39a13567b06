#include "feynkac/fracweights.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

using namespace feynkac;

namespace {

// Independent oracle: g_j = (-1)^j binom(s, j) evaluated through the gamma
// function, no recurrence.
double grunwald_gamma_oracle(double s, int j) {
  const double sign = (j % 2 == 0) ? 1.0 : -1.0;
  return sign * std::tgamma(s + 1.0) /
         (std::tgamma(static_cast<double>(j) + 1.0) * std::tgamma(s - j + 1.0));
}

void expect_close_rel(double got, double want, double rel, const std::string& what) {
  const double scale = std::max({std::abs(got), std::abs(want), 1e-300});
  EXPECT_LE(std::abs(got - want), rel * scale) << what << ": got " << got
                                               << ", want " << want;
}

}  // namespace

TEST(GrunwaldCoeffs, MatchesTabulatedValues) {
  const std::vector<double> half = grunwald_coeffs(0.5, 3);
  ASSERT_EQ(half.size(), 4u);
  EXPECT_DOUBLE_EQ(half[0], 1.0);
  EXPECT_DOUBLE_EQ(half[1], -0.5);
  EXPECT_DOUBLE_EQ(half[2], -0.125);
  EXPECT_DOUBLE_EQ(half[3], -0.0625);

  const std::vector<double> one = grunwald_coeffs(1.0, 2);
  EXPECT_DOUBLE_EQ(one[0], 1.0);
  EXPECT_DOUBLE_EQ(one[1], -1.0);
  EXPECT_DOUBLE_EQ(one[2], 0.0);

  const std::vector<double> s03 = grunwald_coeffs(0.3, 1);
  EXPECT_DOUBLE_EQ(s03[0], 1.0);
  EXPECT_DOUBLE_EQ(s03[1], -0.3);
}

TEST(GrunwaldCoeffs, AgreesWithGammaOracle) {
  for (double s : {0.1, 0.3, 0.5, 0.7, 0.9, -0.5, -0.7}) {
    const std::vector<double> c = grunwald_coeffs(s, 30);
    for (int j = 0; j <= 30; ++j) {
      expect_close_rel(c[j], grunwald_gamma_oracle(s, j), 1e-12,
                       "s=" + std::to_string(s) + " j=" + std::to_string(j));
    }
  }
}

TEST(GrunwaldCoeffs, RejectsNegativeLength) {
  EXPECT_THROW(grunwald_coeffs(0.5, -1), std::invalid_argument);
}

TEST(BinomialPowerSeries, PolynomialAndGeometricCases) {
  const std::vector<double> linear = binomial_power_series(1.0, 0.2, 2);
  EXPECT_DOUBLE_EQ(linear[0], 1.0);
  EXPECT_DOUBLE_EQ(linear[1], -0.2);
  EXPECT_DOUBLE_EQ(linear[2], 0.0);

  const std::vector<double> geometric = binomial_power_series(-1.0, 0.2, 2);
  EXPECT_DOUBLE_EQ(geometric[0], 1.0);
  EXPECT_NEAR(geometric[1], 0.2, 1e-15);
  EXPECT_NEAR(geometric[2], 0.04, 1e-15);

  const std::vector<double> root = binomial_power_series(-0.5, 0.2, 1);
  EXPECT_DOUBLE_EQ(root[0], 1.0);
  EXPECT_NEAR(root[1], 0.1, 1e-15);
}

TEST(BinomialPowerSeries, RejectsScaleOutsideUnitInterval) {
  EXPECT_THROW(binomial_power_series(0.5, 0.0, 3), std::invalid_argument);
  EXPECT_THROW(binomial_power_series(0.5, 1.0, 3), std::invalid_argument);
  EXPECT_THROW(binomial_power_series(0.5, -0.3, 3), std::invalid_argument);
  EXPECT_THROW(binomial_power_series(0.5, 1.7, 3), std::invalid_argument);
}

TEST(FsdWeights, MatchesSpeltOutValues) {
  const WeightTable deriv = fsd_weights(0.5, 0.5, 2);
  ASSERT_EQ(deriv.weights.size(), 3u);
  EXPECT_NEAR(deriv.weights[0], 1.25, 1e-15);
  EXPECT_NEAR(deriv.weights[1], -0.875, 1e-15);
  EXPECT_NEAR(deriv.weights[2], -0.03125, 1e-15);

  const WeightTable integ = fsd_weights(0.5, -0.5, 0);
  EXPECT_NEAR(integ.weights[0], 0.8, 1e-15);

  const WeightTable w03 = fsd_weights(0.3, 0.3, 0);
  EXPECT_NEAR(w03.weights[0], 1.15, 1e-15);
}

TEST(FsdWeights, FirstWeightIsPositivePower) {
  for (double alpha : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    for (double sigma : {alpha, alpha - 1.0}) {
      const WeightTable t = fsd_weights(alpha, sigma, 4);
      const double expected = std::pow(1.0 + alpha / 2.0, sigma / alpha);
      EXPECT_GT(t.weights[0], 0.0);
      expect_close_rel(t.weights[0], expected, 1e-14, "w_0");
    }
  }
}

TEST(FsdWeights, ClosedFormEquivalence) {
  // sigma = alpha must reproduce w_0 = ((a+2)/2) g_0,
  // w_j = ((a+2)/2) g_j - (a/2) g_{j-1} to 1e-13 relative.
  for (double alpha : {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9}) {
    const int n = 256;
    const WeightTable t = fsd_weights(alpha, alpha, n);
    const std::vector<double> g = grunwald_coeffs(alpha, n);
    for (int j = 0; j <= n; ++j) {
      const double closed = (j == 0) ? (alpha + 2.0) / 2.0 * g[0]
                                     : (alpha + 2.0) / 2.0 * g[j] -
                                           alpha / 2.0 * g[j - 1];
      expect_close_rel(t.weights[j], closed, 1e-13,
                       "alpha=" + std::to_string(alpha) + " j=" + std::to_string(j));
    }
  }
}

TEST(FsdWeights, GeneratingFunctionProduct) {
  // Coefficients must equal the Cauchy product of (1-z)^alpha with the
  // degree-1 polynomial (1 + a/2 - (a/2) z).
  for (double alpha : {0.2, 0.5, 0.8}) {
    const int n = 64;
    const WeightTable t = fsd_weights(alpha, alpha, n);
    std::vector<double> poly(static_cast<std::size_t>(n) + 1, 0.0);
    poly[0] = 1.0 + alpha / 2.0;
    poly[1] = -alpha / 2.0;
    const std::vector<double> product = cauchy_product(grunwald_coeffs(alpha, n), poly);
    for (int j = 0; j <= n; ++j) {
      expect_close_rel(t.weights[j], product[j], 1e-13, "j=" + std::to_string(j));
    }
  }
}

TEST(FsdWeights, InversePairCauchyProduct) {
  // Generating functions of sigma = alpha and sigma = -alpha multiply to 1.
  for (double alpha : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    const int n = 256;
    const std::vector<double> product =
        cauchy_product(fsd_weights(alpha, alpha, n).weights,
                       fsd_weights(alpha, -alpha, n).weights);
    EXPECT_NEAR(product[0], 1.0, 1e-12) << "alpha=" << alpha;
    for (int j = 1; j <= n; ++j) {
      EXPECT_NEAR(product[j], 0.0, 1e-12)
          << "alpha=" << alpha << " j=" << j;
    }
  }
}

TEST(FsdWeights, PartialSumsDecayTowardZero) {
  // sum_j w_j^(alpha) = value of the generating polynomial at z = 1 = 0.
  for (double alpha : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    const WeightTable t = fsd_weights(alpha, alpha, 256);
    auto partial = [&](int n) {
      double s = 0.0;
      for (int j = 0; j <= n; ++j) s += t.weights[j];
      return s;
    };
    const double s16 = partial(16);
    const double s64 = partial(64);
    const double s256 = partial(256);
    EXPECT_GT(s256, 0.0);
    EXPECT_LT(s256, s64);
    EXPECT_LT(s64, s16);
    EXPECT_LT(s256, 0.8 * s16) << "alpha=" << alpha;
  }
}

TEST(TwoTermWsgdWeights, ReducesToFsdWeightsAtOrderAlpha) {
  for (double alpha : {0.2, 0.5, 0.8}) {
    const std::vector<double> two_term = two_term_wsgd_weights(alpha, 64);
    const WeightTable table = fsd_weights(alpha, alpha, 64);
    for (int j = 0; j <= 64; ++j) {
      expect_close_rel(two_term[j], table.weights[j], 1e-13,
                       "alpha=" + std::to_string(alpha) + " j=" + std::to_string(j));
    }
  }
}

TEST(TwoTermWsgdWeights, GeneratingFunctionIdentityAtNegativeOrder) {
  // Convolving with the series of (1-z)^(-sigma) must leave exactly the
  // degree-1 polynomial (1 + sigma/2 - (sigma/2) z).
  for (double alpha : {0.3, 0.5, 0.7}) {
    const double sigma = alpha - 1.0;
    const int n = 128;
    const std::vector<double> recovered =
        cauchy_product(two_term_wsgd_weights(sigma, n), grunwald_coeffs(-sigma, n));
    EXPECT_NEAR(recovered[0], 1.0 + sigma / 2.0, 1e-12);
    EXPECT_NEAR(recovered[1], -sigma / 2.0, 1e-12);
    for (int j = 2; j <= n; ++j) {
      EXPECT_NEAR(recovered[j], 0.0, 1e-12) << "sigma=" << sigma << " j=" << j;
    }
  }
}

TEST(FsdWeights, RejectsBadParameters) {
  EXPECT_THROW(fsd_weights(0.0, 0.0, 4), std::invalid_argument);
  EXPECT_THROW(fsd_weights(1.0, 1.0, 4), std::invalid_argument);
  EXPECT_THROW(fsd_weights(0.5, 0.5, -2), std::invalid_argument);
}
