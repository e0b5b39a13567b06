#include "feynkac/oracle.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>

using namespace feynkac;

TEST(MittagLeffler, ValueAtZeroIsOne) {
  for (double alpha : {0.2, 0.5, 0.8, 1.0}) {
    const Complex v = mittag_leffler(alpha, {0.0, 0.0});
    EXPECT_DOUBLE_EQ(v.real(), 1.0);
    EXPECT_DOUBLE_EQ(v.imag(), 0.0);
  }
}

TEST(MittagLeffler, AlphaOneIsExponential) {
  EXPECT_NEAR(mittag_leffler(1.0, {1.0, 0.0}).real(), std::exp(1.0), 1e-12);
  for (double re : {-5.0, -2.5, -0.5, 0.5, 2.5}) {
    for (double im : {-3.0, 0.0, 2.0}) {
      const Complex z(re, im);
      if (std::abs(z) > 5.0) continue;
      const Complex got = mittag_leffler(1.0, z);
      const Complex want = std::exp(z);
      EXPECT_NEAR(std::abs(got - want), 0.0, 1e-12 * std::abs(want))
          << "z=" << re << "+" << im << "i";
    }
  }
}

TEST(MittagLeffler, HalfOrderReferenceValues) {
  // E_{1/2}(-1) = e * erfc(1); reference from 40-digit arithmetic.
  EXPECT_NEAR(mittag_leffler(0.5, {-1.0, 0.0}).real(), 0.42758357615580700441,
              1e-13);
  // Case used by the analytic-oracle study: z = -pi^2 * sqrt(1/2).
  const double z = -std::numbers::pi * std::numbers::pi * std::sqrt(0.5);
  EXPECT_NEAR(mittag_leffler(0.5, {z, 0.0}).real(), 0.080037013875985907, 1e-12);
  // Complex argument.
  const Complex w = mittag_leffler(0.5, {0.3, 0.4});
  EXPECT_NEAR(w.real(), 1.1560949880874196, 1e-12);
  EXPECT_NEAR(w.imag(), 0.69687746798459432, 1e-12);
}

TEST(MittagLeffler, OtherOrdersReferenceValues) {
  EXPECT_NEAR(mittag_leffler(0.3, {-2.0, 0.0}).real(), 0.29023222616787535, 1e-12);
  EXPECT_NEAR(mittag_leffler(0.7, {1.5, 0.0}).real(), 8.3696354095690637, 1e-11 * 8.4);
}

TEST(MittagLeffler, RealArgumentStaysReal) {
  for (double alpha : {0.3, 0.5, 0.9}) {
    // Small alpha ties the usable |z| down: term decay is ~|z|/(alpha k)^alpha
    // per step, so alpha=0.3 with |z|=4 would exhaust the 500-term cap.
    const double span = alpha < 0.4 ? 2.0 : 4.0;
    for (double z : {-span, -1.0, -0.1, 0.7, span - 1.0}) {
      EXPECT_LE(std::abs(mittag_leffler(alpha, {z, 0.0}).imag()), 1e-14)
          << "alpha=" << alpha << " z=" << z;
    }
  }
}

TEST(MittagLeffler, GuardsAndErrors) {
  EXPECT_THROW(mittag_leffler(0.5, {20.0, 0.0}), std::domain_error);
  EXPECT_THROW(mittag_leffler(MLParams{0.5, 30.0}, {-25.0, 0.0}),
               std::runtime_error);  // peaks beyond the 500-term cap
  EXPECT_THROW(mittag_leffler(0.0, {0.5, 0.0}), std::invalid_argument);
  EXPECT_THROW(mittag_leffler(1.5, {0.5, 0.0}), std::invalid_argument);
  EXPECT_THROW(mittag_leffler(MLParams{0.5, -1.0}, {0.1, 0.0}),
               std::invalid_argument);
}

TEST(ExactSolution, InitialConditionIsExactInterpolant) {
  const Mesh mesh = build_mesh(1, 32);
  const NodalField field =
      exact_constant_potential_solution(0.5, {-1.0, 1.0}, 1.0, 2, 0.0, mesh);
  for (int i = 0; i < mesh.n_free(); ++i) {
    const double x = mesh.node_coords[mesh.free_nodes[i]].x;
    EXPECT_DOUBLE_EQ(field.values[i].real(), std::sin(2 * std::numbers::pi * x));
    EXPECT_DOUBLE_EQ(field.values[i].imag(), 0.0);
  }
}

TEST(ExactSolution, ClassicalHeatModeAtAlphaOne) {
  // alpha = 1, rho = 0, k = 1: e^{-pi^2 t} sin(pi x).
  const Mesh mesh = build_mesh(1, 16);
  const double t = 0.1;
  const NodalField field =
      exact_constant_potential_solution(1.0, {0.0, 0.0}, 0.0, 1, t, mesh);
  const double amplitude = std::exp(-std::numbers::pi * std::numbers::pi * t);
  for (int i = 0; i < mesh.n_free(); ++i) {
    const double x = mesh.node_coords[mesh.free_nodes[i]].x;
    EXPECT_NEAR(field.values[i].real(), amplitude * std::sin(std::numbers::pi * x),
                1e-12);
  }
}

TEST(ExactSolution, ComposesExponentialAndSeries) {
  const Mesh mesh = build_mesh(1, 8);
  const double t = 0.25;
  const NodalField field =
      exact_constant_potential_solution(0.5, {-1.0, 0.0}, 1.0, 1, t, mesh);
  const Complex amplitude =
      std::exp(Complex(t, 0.0)) *
      mittag_leffler(0.5,
                     {-std::numbers::pi * std::numbers::pi * std::sqrt(t), 0.0});
  for (int i = 0; i < mesh.n_free(); ++i) {
    const double x = mesh.node_coords[mesh.free_nodes[i]].x;
    const Complex want = amplitude * std::sin(std::numbers::pi * x);
    EXPECT_NEAR(std::abs(field.values[i] - want), 0.0, 1e-14);
  }
}

TEST(ExactSolution, RejectsUnsupportedCases) {
  const Mesh mesh2d = build_mesh(2, 4);
  EXPECT_THROW(exact_constant_potential_solution(0.5, {0, 0}, 1.0, 1, 0.5, mesh2d),
               std::invalid_argument);
  const Mesh mesh = build_mesh(1, 4);
  EXPECT_THROW(exact_constant_potential_solution(0.5, {0, 0}, 1.0, 0, 0.5, mesh),
               std::invalid_argument);
  EXPECT_THROW(exact_constant_potential_solution(0.5, {0, 0}, 1.0, 1, -0.5, mesh),
               std::invalid_argument);
}
