#include "beamspec/fdoracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace beamspec {

StaggeredGrid make_grid(double length, int interior) {
  if (!(length > 0.0)) throw std::invalid_argument("grid length must be positive");
  if (interior < 8) throw std::invalid_argument("grid needs at least 8 interior nodes");
  return {length, interior};
}

Eigen::MatrixXd difference_matrix(bool left_bv, bool right_bv, Eigen::Index points, double h) {
  if (points < 3) throw std::invalid_argument("difference matrix needs at least 3 points");
  const Eigen::Index first = left_bv ? 1 : 0;
  const Eigen::Index last = right_bv ? points - 2 : points - 1;
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(points - 1, last - first + 1);
  for (Eigen::Index row = 0; row < points - 1; ++row) {
    if (row + 1 >= first && row + 1 <= last) d(row, row + 1 - first) = 1.0 / h;
    if (row >= first && row <= last) d(row, row - first) = -1.0 / h;
  }
  return d;
}

Eigen::MatrixXd difference_matrix(bool left_bv, bool right_bv, const StaggeredGrid& grid) {
  return difference_matrix(left_bv, right_bv, grid.nodes(), grid.spacing());
}

double adjoint_identity_check(const StaggeredGrid& grid) {
  const double h = grid.spacing();
  const Eigen::Index n = grid.nodes();
  auto deviation = [](const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
      return std::numeric_limits<double>::infinity();
    }
    return (a + b).cwiseAbs().maxCoeff();
  };
  // The adjoint of a factor with a boundary value at an end is the negated
  // factor without it, acting on the dual point set.
  double worst = 0.0;
  worst = std::max(worst, deviation(difference_matrix(true, true, n, h).transpose(),
                                    difference_matrix(false, false, n - 1, h)));
  worst = std::max(worst, deviation(difference_matrix(false, false, n, h).transpose(),
                                    difference_matrix(true, true, n + 1, h)));
  worst = std::max(worst, deviation(difference_matrix(true, false, n, h).transpose(),
                                    difference_matrix(false, true, n, h)));
  worst = std::max(worst, deviation(difference_matrix(false, true, n, h).transpose(),
                                    difference_matrix(true, false, n, h)));
  return worst;
}

double dirichlet_laplacian_check(const StaggeredGrid& grid) {
  const double h = grid.spacing();
  const Eigen::MatrixXd d = difference_matrix(true, true, grid);
  const Eigen::MatrixXd product = d.transpose() * d;
  const int m = grid.interior;
  Eigen::MatrixXd expected = Eigen::MatrixXd::Zero(m, m);
  for (int i = 0; i < m; ++i) {
    expected(i, i) = 2.0 / (h * h);
    if (i > 0) expected(i, i - 1) = -1.0 / (h * h);
    if (i + 1 < m) expected(i, i + 1) = -1.0 / (h * h);
  }
  return (product - expected).cwiseAbs().maxCoeff();
}

DiscreteOperator assemble_operator(const SupportCase& c, const StaggeredGrid& grid) {
  const FirstOrderOp first = c.factorization[3];
  const FirstOrderOp second = c.factorization[2];
  const double h = grid.spacing();
  const int last_node = grid.nodes() - 1;
  const Eigen::Index edges = grid.edges();

  DiscreteOperator op{c.name, grid, {}, {}, {}, {}, {}, {}, {}};
  op.inner = difference_matrix(has_left(first), has_right(first), grid);
  for (int j = 0; j <= last_node; ++j) {
    if ((j == 0 && has_left(first)) || (j == last_node && has_right(first))) continue;
    op.unknown_nodes.push_back(j);
  }
  op.mass.resize(static_cast<Eigen::Index>(op.unknown_nodes.size()));
  for (std::size_t k = 0; k < op.unknown_nodes.size(); ++k) {
    const int j = op.unknown_nodes[k];
    op.mass(Eigen::Index(k)) = (j == 0 || j == last_node) ? 0.5 * h : h;
  }

  // Second-derivative points: interior nodes, plus a half cell next to
  // each end where the first derivative is pinned to zero.
  const bool pin_left = has_left(second);
  const bool pin_right = has_right(second);
  const Eigen::Index rows = (edges - 1) + (pin_left ? 1 : 0) + (pin_right ? 1 : 0);
  op.outer = Eigen::MatrixXd::Zero(rows, edges);
  op.weights.resize(rows);
  Eigen::Index r = 0;
  if (pin_left) {
    op.outer(r, 0) = 2.0 / h;
    op.weights(r++) = 0.5 * h;
  }
  op.outer.middleRows(r, edges - 1) = difference_matrix(false, false, edges, h);
  op.weights.segment(r, edges - 1).setConstant(h);
  r += edges - 1;
  if (pin_right) {
    op.outer(r, edges - 1) = -2.0 / h;
    op.weights(r++) = 0.5 * h;
  }

  op.factor = op.weights.cwiseSqrt().asDiagonal() * (op.outer * op.inner) *
              op.mass.cwiseSqrt().cwiseInverse().asDiagonal();
  const Eigen::Index n = op.factor.cols();
  op.matrix = Eigen::MatrixXd::Zero(n, n);
  op.matrix.selfadjointView<Eigen::Lower>().rankUpdate(op.factor.transpose());
  op.matrix.triangularView<Eigen::StrictlyUpper>() = op.matrix.transpose();
  return op;
}

Eigen::VectorXd discrete_spectrum(const DiscreteOperator& op) {
  const Eigen::BDCSVD<Eigen::MatrixXd> svd(op.factor);
  const Eigen::VectorXd s = svd.singularValues();
  Eigen::VectorXd ev = Eigen::VectorXd::Zero(op.factor.cols());
  ev.head(s.size()) = s.cwiseAbs2();
  std::sort(ev.begin(), ev.end());
  return ev;
}

Eigen::VectorXd lowest_eigenvalues(const DiscreteOperator& op, int k) {
  if (k < 1 || k > op.matrix.rows()) {
    throw std::invalid_argument("requested eigenvalue count exceeds matrix dimension");
  }
  return discrete_spectrum(op).head(k);
}

int kernel_count(const Eigen::Ref<const Eigen::VectorXd>& ev) {
  if (ev.size() < 3) throw std::invalid_argument("kernel count needs three eigenvalues");
  const double threshold = 1e-8 * ev(2);
  return static_cast<int>((ev.array() < threshold).count());
}

double observed_order(std::span<const int> interiors, std::span<const double> errors) {
  if (interiors.size() != errors.size() || interiors.size() < 2) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  // Fit log(err) = c + p log(h); h ~ 1 / (m + 1).
  const auto n = static_cast<double>(interiors.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < interiors.size(); ++i) {
    const double x = -std::log(double(interiors[i] + 1));
    const double y = std::log(errors[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

double max_stable_dt(const DiscreteOperator& op, double sigma) {
  if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
  const double lambda_max = discrete_spectrum(op).maxCoeff();
  return 1.9 / (sigma * std::sqrt(lambda_max));
}

LeapfrogResult leapfrog_evolve(const DiscreteOperator& op,
                               const Eigen::Ref<const Eigen::VectorXd>& u0,
                               const Eigen::Ref<const Eigen::VectorXd>& v0, double sigma,
                               double dt, double T, int frames) {
  const int nodes = op.grid.nodes();
  if (u0.size() != nodes || v0.size() != nodes) {
    throw std::invalid_argument("initial samples must cover all grid nodes");
  }
  if (!(T > 0.0) || frames < 1) throw std::invalid_argument("need T > 0 and frames >= 1");
  const double bound = max_stable_dt(op, sigma);
  if (!(dt > 0.0) || dt > bound) {
    std::ostringstream msg;
    msg << "time step " << dt << " violates the stability bound " << bound;
    throw std::invalid_argument(msg.str());
  }

  const long intervals = std::max(1, frames - 1);
  long steps = static_cast<long>(std::ceil(T / dt));
  steps = ((steps + intervals - 1) / intervals) * intervals;
  const long stride = steps / intervals;

  LeapfrogResult result;
  result.dt = T / static_cast<double>(steps);
  result.steps = steps;
  const double h = result.dt;

  // Mass-scaled unknowns y = M^{1/2} u turn the scheme into y'' = -s^2 A y.
  const auto n = static_cast<Eigen::Index>(op.unknown_nodes.size());
  const Eigen::VectorXd root_mass = op.mass.cwiseSqrt();
  Eigen::VectorXd y(n), v(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    y(k) = root_mass(k) * u0(op.unknown_nodes[std::size_t(k)]);
    v(k) = root_mass(k) * v0(op.unknown_nodes[std::size_t(k)]);
  }
  const double s2 = sigma * sigma;
  Eigen::VectorXd acc = -s2 * (op.matrix * y);

  Eigen::VectorXd xs(nodes);
  for (int j = 0; j < nodes; ++j) xs(j) = op.grid.length * j / (nodes - 1);
  xs(nodes - 1) = op.grid.length;

  auto record = [&](double t) {
    SolutionFrame f{t, xs, Eigen::VectorXd::Zero(nodes), Eigen::VectorXd::Zero(nodes)};
    for (Eigen::Index k = 0; k < n; ++k) {
      const int j = op.unknown_nodes[std::size_t(k)];
      f.displacement(j) = y(k) / root_mass(k);
      f.velocity(j) = v(k) / root_mass(k);
    }
    result.frames.push_back(std::move(f));
    const Eigen::VectorXd ay = op.matrix * y;
    const double energy = 0.5 * v.squaredNorm() + 0.5 * s2 * y.dot(ay);
    result.energy.push_back(energy);
    result.modified_energy.push_back(energy - 0.125 * h * h * s2 * s2 * ay.squaredNorm());
  };

  record(0.0);
  for (long step = 1; step <= steps; ++step) {
    v += 0.5 * h * acc;
    y += h * v;
    acc = -s2 * (op.matrix * y);
    v += 0.5 * h * acc;
    if (frames > 1 && step % stride == 0) record(step * h);
  }
  if (frames == 1) {
    result.frames.clear();
    result.energy.clear();
    result.modified_energy.clear();
    record(steps * h);
  }
  return result;
}

VerifyReport verify_case(const SupportCase& c, double length, std::span<const int> interiors) {
  if (interiors.empty()) throw std::invalid_argument("verify needs at least one grid");
  VerifyReport report;
  report.support = c.name;
  report.expected_kernel = c.kernel_dimension;

  const BeamGeometry geom{length};
  const auto records = eigenvalues(c, geom, c.kernel_dimension + 3);
  Eigen::VectorXd spectral(3);
  for (int i = 0; i < 3; ++i) {
    spectral(i) = records[std::size_t(c.kernel_dimension + i)].eigenvalue;
  }

  report.kernel_ok = true;
  std::vector<double> first_errors;
  for (int m : interiors) {
    const auto grid = make_grid(length, m);
    const auto op = assemble_operator(c, grid);
    const Eigen::VectorXd ev = discrete_spectrum(op);
    VerifyRow row;
    row.interior = m;
    row.kernel = kernel_count(ev);
    row.spectral = spectral;
    row.discrete = ev.segment(row.kernel, 3);
    row.relative_error = ((row.discrete - spectral).array() / spectral.array()).abs().matrix();
    report.kernel_ok = report.kernel_ok && row.kernel == c.kernel_dimension;
    first_errors.push_back(row.relative_error(0));
    report.rows.push_back(std::move(row));
  }

  const auto finest = std::ranges::max_element(report.rows, {}, &VerifyRow::interior);
  report.accuracy_ok = finest->relative_error(0) < 0.01 && finest->relative_error(1) < 0.02 &&
                       finest->relative_error(2) < 0.02;
  report.order = observed_order(interiors, first_errors);
  report.order_ok = interiors.size() < 2 || report.order >= 1.8;
  report.adjoint_deviation = adjoint_identity_check(make_grid(length, finest->interior));
  report.adjoint_ok = report.adjoint_deviation == 0.0;
  return report;
}

}  // namespace beamspec
