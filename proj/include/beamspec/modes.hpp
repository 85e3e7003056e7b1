#pragma once

#include <span>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "beamspec/quadrature.hpp"
#include "beamspec/spectrum.hpp"
#include "beamspec/supports.hpp"

namespace beamspec {

/// amplitude * sin(w x) or amplitude * cos(w x).
struct TrigShape {
  enum class Kind { Sine, Cosine };
  Kind kind = Kind::Sine;
  double wavenumber = 0.0;
  double amplitude = 1.0;
};

/// c0 e^{-k x} + c1 e^{-k (l - x)} + c2 cos(k x) + c3 sin(k x).
struct GeneralShape {
  Eigen::Vector4d coeffs = Eigen::Vector4d::Zero();
  double kappa = 0.0;
};

using ShapeForm = std::variant<TrigShape, GeneralShape, PolynomialShape>;

struct ModeShape {
  ShapeForm form;
  bool reflected = false;  // evaluate at l - x
};

struct EigenMode {
  EigenvalueRecord record;
  ModeShape shape;
  BeamGeometry geometry;
  ResolvedCase support;
};

/// Builds the normalized eigenfunction for a record of the canonical case.
/// Throws DegenerateRootError if the characteristic matrix at a determinant
/// root does not have rank 3.
EigenMode build_mode(const SupportCase& c, const EigenvalueRecord& record,
                     const BeamGeometry& geom);

/// Same, for a possibly mirrored support.
EigenMode build_mode(const ResolvedCase& rc, const EigenvalueRecord& record,
                     const BeamGeometry& geom);

/// The first `count` modes of a support, with the documented per-index
/// boundary-residual tolerance enforced.
std::vector<EigenMode> build_modes(const ResolvedCase& rc, const BeamGeometry& geom, int count);

/// psi^(order)(x), 0 <= order <= 4.
double evaluate(const EigenMode& mode, double x, int order = 0);

/// Samples of psi at every point of `xs`.
Eigen::VectorXd evaluate(const EigenMode& mode, const Eigen::Ref<const Eigen::VectorXd>& xs,
                         int order = 0);

Eigen::MatrixXd gram_matrix(std::span<const EigenMode> modes, const QuadratureSettings& quad);

/// max over the four constraints of |psi^(order)(end)| / max(1, kappa^order).
double bv_residual(const EigenMode& mode);

/// Tolerance for bv_residual by mode index: 1e-8 up to n = 4, growing
/// geometrically to 1e-6 at n = 12 and flat beyond.
double bv_tolerance(int index);

double omega(const EigenMode& mode, double sigma);

}  // namespace beamspec
