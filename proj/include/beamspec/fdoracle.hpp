#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "beamspec/evolution.hpp"
#include "beamspec/spectrum.hpp"
#include "beamspec/supports.hpp"

namespace beamspec {

// Finite-difference cross-check of the spectral solver. The fourth-order
// operator of each support is assembled as A_h = G^T G, where G is the
// discrete counterpart of the two first-order factors applied first in the
// support's operator product. Essential conditions (orders 0 and 1) delete
// columns of the factor that carries them; the natural ones follow.

/// Nodes x_j = j h, j = 0..m+1, with h = l / (m + 1); edges sit at the
/// m + 1 midpoints.
struct StaggeredGrid {
  double length = 1.0;
  int interior = 8;  // m

  double spacing() const { return length / (interior + 1); }
  int nodes() const { return interior + 2; }
  int edges() const { return interior + 1; }
};

StaggeredGrid make_grid(double length, int interior);

/// Forward differences (v_{j+1} - v_j) / h from `points` values to the
/// points - 1 midpoints. A set flag deletes the column of the first or
/// last point (the value there is pinned to zero).
Eigen::MatrixXd difference_matrix(bool left_bv, bool right_bv, Eigen::Index points, double h);

/// Node-to-edge version on a staggered grid.
Eigen::MatrixXd difference_matrix(bool left_bv, bool right_bv, const StaggeredGrid& grid);

/// Largest entry of D_{++}^T + D_{--}, D_{+-}^T + D_{-+}, D_{-+}^T + D_{+-}
/// and D_{--}^T + D_{++} on the grid (each pair on matching point sets).
/// Exactly zero for a correct stencil.
double adjoint_identity_check(const StaggeredGrid& grid);

/// Largest entry of D_{++}^T D_{++} minus the (-1, 2, -1)/h^2 Dirichlet
/// Laplacian.
double dirichlet_laplacian_check(const StaggeredGrid& grid);

struct DiscreteOperator {
  CaseName support;
  StaggeredGrid grid;
  Eigen::MatrixXd inner;    // first factor, nodes -> edges, +-1/h
  Eigen::MatrixXd outer;    // second factor, edges -> second-derivative points
  Eigen::VectorXd weights;  // lengths of the cells around second-derivative points
  Eigen::VectorXd mass;     // lengths of the cells around the unknown nodes
  Eigen::MatrixXd factor;   // G = W^{1/2} outer inner M^{-1/2}
  Eigen::MatrixXd matrix;   // A_h = G^T G
  std::vector<int> unknown_nodes;
};

DiscreteOperator assemble_operator(const SupportCase& c, const StaggeredGrid& grid);

/// All eigenvalues of A_h in ascending order, as squared singular values of
/// G (rank-deficient directions count as exact zeros).
Eigen::VectorXd discrete_spectrum(const DiscreteOperator& op);

Eigen::VectorXd lowest_eigenvalues(const DiscreteOperator& op, int k);

/// Number of eigenvalues below 1e-8 times the third-smallest one (the
/// kernel is at most two-dimensional).
int kernel_count(const Eigen::Ref<const Eigen::VectorXd>& ascending_eigenvalues);

/// Least-squares slope of log(error) against log(h).
double observed_order(std::span<const int> interiors, std::span<const double> errors);

struct LeapfrogResult {
  std::vector<SolutionFrame> frames;  // on all grid nodes
  std::vector<double> energy;         // 1/2 |v|^2 + 1/2 s^2 y^T A y
  // 1/2 |v|^2 + 1/2 s^2 y^T (A - dt^2 s^2 A^2 / 4) y, exact invariant of the scheme
  std::vector<double> modified_energy;
  double dt = 0.0;
  long steps = 0;
};

/// Largest dt accepted by leapfrog_evolve: 1.9 / (sigma sqrt(lambda_max)).
double max_stable_dt(const DiscreteOperator& op, double sigma);

/// Velocity Verlet for u'' = -sigma^2 A_h u from node samples (all m + 2
/// nodes; entries at deleted nodes are ignored). The step is shrunk so that
/// `frames` equally spaced outputs over [0, T] land on steps. Throws if
/// `dt` exceeds the stability bound.
LeapfrogResult leapfrog_evolve(const DiscreteOperator& op,
                               const Eigen::Ref<const Eigen::VectorXd>& u0,
                               const Eigen::Ref<const Eigen::VectorXd>& v0, double sigma,
                               double dt, double T, int frames);

struct VerifyRow {
  int interior = 0;
  Eigen::VectorXd spectral;        // three smallest positive a_n
  Eigen::VectorXd discrete;        // three smallest positive FD eigenvalues
  Eigen::VectorXd relative_error;
  int kernel = 0;
};

struct VerifyReport {
  CaseName support;
  std::vector<VerifyRow> rows;
  int expected_kernel = 0;
  double adjoint_deviation = 0.0;
  double order = 0.0;  // NaN with a single grid
  bool kernel_ok = false;
  bool accuracy_ok = false;
  bool order_ok = false;
  bool adjoint_ok = false;

  bool passed() const { return kernel_ok && accuracy_ok && order_ok && adjoint_ok; }
};

/// Thresholds: lambda_1 within 1% and lambda_2, lambda_3 within 2% on the
/// finest grid, kernel counts equal to the support's kernel dimension on
/// every grid, exact adjoint identities, and order >= 1.8 over the grids.
VerifyReport verify_case(const SupportCase& c, double length, std::span<const int> interiors);

}  // namespace beamspec
