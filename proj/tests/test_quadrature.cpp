#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "beamspec/quadrature.hpp"

using namespace beamspec;

TEST(Quadrature, GaussLegendreIntegratesHighDegreeMonomials) {
  for (int n : {2, 5, 8, 16, 32}) {
    const auto gl = gauss_legendre(n);
    EXPECT_NEAR(gl.weights.sum(), 2.0, 1e-14);
    for (int i = 0; i < n; ++i) EXPECT_NEAR(gl.nodes(i), -gl.nodes(n - 1 - i), 1e-15);
    // int_{-1}^{1} x^{2n-2} dx = 2 / (2n - 1)
    const int p = 2 * n - 2;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) sum += gl.weights(i) * std::pow(gl.nodes(i), p);
    EXPECT_NEAR(sum, 2.0 / (p + 1), 1e-13);
  }
}

TEST(Quadrature, CoshSquared) {
  const double got = integrate([](double x) { return std::pow(std::cosh(3 * x), 2); }, 1.0,
                               QuadratureSettings{});
  EXPECT_NEAR(got, std::sinh(6.0) / 12.0 + 0.5, 1e-13);
}

TEST(Quadrature, InnerProductOfSines) {
  const double l = 2.0;
  auto s = [&](int n) { return [=](double x) { return std::sin(n * std::numbers::pi * x / l); }; };
  const auto q = QuadratureSettings::for_modes(12);
  EXPECT_NEAR(inner_product(s(3), s(3), l, q), 1.0, 1e-14);
  EXPECT_NEAR(inner_product(s(3), s(11), l, q), 0.0, 1e-14);
}

TEST(Quadrature, BreakpointsMakeKinksExact) {
  const std::vector<double> breaks{0.3};
  const auto rule = composite_rule(1.0, QuadratureSettings{3, 4}, breaks);
  EXPECT_NEAR(rule.apply([](double x) { return std::abs(x - 0.3); }), 0.29, 1e-15);
  EXPECT_NEAR(rule.weights.sum(), 1.0, 1e-15);
  EXPECT_GE(rule.points.minCoeff(), 0.0);
  EXPECT_LE(rule.points.maxCoeff(), 1.0);
}

TEST(Quadrature, BreakpointsOutsideOrOnPanelEdgesAreIgnored) {
  const std::vector<double> breaks{-1.0, 0.0, 0.5, 1.0, 2.0};
  const auto plain = composite_rule(1.0, QuadratureSettings{2, 4});
  const auto merged = composite_rule(1.0, QuadratureSettings{2, 4}, breaks);
  EXPECT_EQ(plain.points.size(), merged.points.size());
}

TEST(Quadrature, Settings) {
  EXPECT_EQ(QuadratureSettings::for_modes(20).panels, 80);
  EXPECT_EQ(QuadratureSettings::for_modes(2).panels, 16);
  EXPECT_THROW(validate(QuadratureSettings{0, 8}), std::invalid_argument);
  EXPECT_THROW(validate(QuadratureSettings{4, 1}), std::invalid_argument);
  EXPECT_THROW(validate(QuadratureSettings{4, 33}), std::invalid_argument);
  EXPECT_THROW(composite_rule(-1.0, QuadratureSettings{}), std::invalid_argument);
}
