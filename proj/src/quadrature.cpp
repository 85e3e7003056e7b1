#include "beamspec/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace beamspec {

QuadratureSettings QuadratureSettings::for_modes(int n_max) {
  return {std::max(16, 4 * n_max), 8};
}

void validate(const QuadratureSettings& settings) {
  if (settings.panels < 1) throw std::invalid_argument("quadrature needs at least one panel");
  if (settings.nodes_per_panel < 2 || settings.nodes_per_panel > 32) {
    throw std::invalid_argument("quadrature nodes per panel must be in [2, 32], got " +
                                std::to_string(settings.nodes_per_panel));
  }
}

GaussLegendre gauss_legendre(int n) {
  GaussLegendre rule{Eigen::VectorXd(n), Eigen::VectorXd(n)};
  for (int i = 0; i < (n + 1) / 2; ++i) {
    // Newton iteration on P_n from the Tricomi initial guess.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes(i) = -x;
    rule.nodes(n - 1 - i) = x;
    rule.weights(i) = w;
    rule.weights(n - 1 - i) = w;
  }
  if (n % 2 == 1) rule.nodes(n / 2) = 0.0;
  return rule;
}

namespace {

QuadratureRule rule_on_breaks(const std::vector<double>& breaks, int nodes) {
  const GaussLegendre gl = gauss_legendre(nodes);
  const auto panels = static_cast<Eigen::Index>(breaks.size() - 1);
  QuadratureRule rule{Eigen::VectorXd(panels * nodes), Eigen::VectorXd(panels * nodes)};
  for (Eigen::Index p = 0; p < panels; ++p) {
    const double a = breaks[static_cast<std::size_t>(p)];
    const double b = breaks[static_cast<std::size_t>(p + 1)];
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    rule.points.segment(p * nodes, nodes) = (mid + half * gl.nodes.array()).matrix();
    rule.weights.segment(p * nodes, nodes) = half * gl.weights;
  }
  return rule;
}

std::vector<double> uniform_breaks(double length, int panels) {
  std::vector<double> breaks(static_cast<std::size_t>(panels) + 1);
  for (int p = 0; p <= panels; ++p) breaks[static_cast<std::size_t>(p)] = length * p / panels;
  return breaks;
}

}  // namespace

QuadratureRule composite_rule(double length, const QuadratureSettings& settings) {
  validate(settings);
  if (!(length > 0.0)) throw std::invalid_argument("integration length must be positive");
  return rule_on_breaks(uniform_breaks(length, settings.panels), settings.nodes_per_panel);
}

QuadratureRule composite_rule(double length, const QuadratureSettings& settings,
                              std::span<const double> breakpoints) {
  validate(settings);
  if (!(length > 0.0)) throw std::invalid_argument("integration length must be positive");
  std::vector<double> breaks = uniform_breaks(length, settings.panels);
  for (double b : breakpoints) {
    if (b > 0.0 && b < length) breaks.push_back(b);
  }
  std::ranges::sort(breaks);
  // Drop slivers left by breakpoints that coincide with panel boundaries.
  const double eps = 1e-12 * length;
  std::vector<double> merged{breaks.front()};
  for (std::size_t i = 1; i < breaks.size(); ++i) {
    if (breaks[i] - merged.back() > eps) merged.push_back(breaks[i]);
  }
  merged.back() = length;
  return rule_on_breaks(merged, settings.nodes_per_panel);
}

}  // namespace beamspec
