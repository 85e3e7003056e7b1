#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

namespace beamspec {

struct QuadratureSettings {
  int panels = 16;
  int nodes_per_panel = 8;

  /// Defaults for expansions up to mode `n_max`: max(16, 4 n_max) panels of
  /// 8 nodes, i.e. at least 8 nodes per oscillation.
  static QuadratureSettings for_modes(int n_max);
};

void validate(const QuadratureSettings& settings);

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendre {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
};

GaussLegendre gauss_legendre(int n);

/// A composite rule: quadrature points on [a, b] with their weights.
struct QuadratureRule {
  Eigen::VectorXd points;
  Eigen::VectorXd weights;

  template <class F>
  double apply(F&& f) const {
    double sum = 0.0;
    for (Eigen::Index i = 0; i < points.size(); ++i) sum += weights(i) * f(points(i));
    return sum;
  }
};

/// Uniform panels on [0, length].
QuadratureRule composite_rule(double length, const QuadratureSettings& settings);

/// Panels bounded by the union of `breakpoints` and the uniform panel
/// boundaries of `settings`, so that piecewise-smooth integrands with kinks
/// at the breakpoints are integrated panel by panel.
QuadratureRule composite_rule(double length, const QuadratureSettings& settings,
                              std::span<const double> breakpoints);

template <class F>
double integrate(F&& f, double length, const QuadratureSettings& settings) {
  return composite_rule(length, settings).apply(std::forward<F>(f));
}

template <class F, class G>
double inner_product(F&& f, G&& g, double length, const QuadratureSettings& settings) {
  return composite_rule(length, settings).apply([&](double x) { return f(x) * g(x); });
}

}  // namespace beamspec
