#pragma once

#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "beamspec/supports.hpp"

namespace beamspec {

/// Largest mode index served per case. Beyond it the double-precision
/// tolerances documented for modes are no longer guaranteed.
inline constexpr int kMaxModes = 25;

struct BeamGeometry {
  double length = 1.0;
};

void validate(const BeamGeometry& geom);

enum class EigenOrigin { ClosedForm, DeterminantRoot, RigidBody };

struct EigenvalueRecord {
  int index = 0;           // 1-based mode number
  double kappa = 0.0;      // 1/length
  double eigenvalue = 0.0; // kappa^4
  EigenOrigin origin = EigenOrigin::ClosedForm;
};

/// Raised when a root scan cannot produce the requested number of roots.
class RootScanError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when the characteristic matrix at a root does not have rank 3.
class DegenerateRootError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Closed-form spectra of the four cases whose operator is the square of a
/// Laplacian (AA, Add1, Add2, Add3).
std::vector<EigenvalueRecord> analytic_spectrum(const SupportCase& c, const BeamGeometry& geom,
                                                int count);

/// Column basis of the characteristic matrix.
///
/// `Exponential` uses {e^{-kx}, e^{-k(l-x)}, cos kx, sin kx}; every entry is
/// bounded by 1 and the null vectors stay well conditioned for large kl.
/// `ScaledHyperbolic` uses {cosh kx, sinh kx}/cosh kl with cos and sin. Its
/// determinant equals the exponential one times e^{kl}/(2 cosh^2 kl) > 0.
enum class CharacteristicBasis { Exponential, ScaledHyperbolic };

/// Row r applies constraint r of the case to the basis functions, divided
/// by kappa^order.
Eigen::Matrix4d characteristic_matrix(const SupportCase& c, double kappa,
                                      const BeamGeometry& geom,
                                      CharacteristicBasis basis = CharacteristicBasis::Exponential);

double characteristic_function(const SupportCase& c, double kappa, const BeamGeometry& geom,
                               CharacteristicBasis basis = CharacteristicBasis::Exponential);

/// Smallest |pivot| / largest |pivot| of a full-pivot LU.
double pivot_ratio(const Eigen::Matrix4d& m);

/// The `count` smallest positive roots of the characteristic function, by
/// a pi/8 scan in kl starting at 1e-4 and bisection to relative width 1e-13.
std::vector<double> find_kappas(const SupportCase& c, const BeamGeometry& geom, int count);

/// a + b x
struct PolynomialShape {
  double a = 0.0;
  double b = 0.0;
};

/// Orthonormal zero-eigenvalue shapes (rigid-body motions) of the case.
std::vector<PolynomialShape> zero_modes(const SupportCase& c, const BeamGeometry& geom);

/// First `count` eigenvalues of any case, sorted: zero modes first, then
/// closed forms or determinant roots.
std::vector<EigenvalueRecord> eigenvalues(const SupportCase& c, const BeamGeometry& geom,
                                          int count);

}  // namespace beamspec
