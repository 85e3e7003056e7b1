#pragma once

#include <optional>
#include <span>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "beamspec/modes.hpp"
#include "beamspec/quadrature.hpp"

namespace beamspec {

/// Either sigma directly or the section quadruple with
/// sigma = sqrt(E I / (rho A)).
struct MaterialParams {
  std::optional<double> sigma;
  std::optional<double> elasticity;     // E
  std::optional<double> area_moment;    // I
  std::optional<double> density;        // rho, mass per unit length
  std::optional<double> area;           // cross-sectional area
};

/// Resolves sigma, rejecting non-positive values, incomplete quadruples and
/// a direct sigma that disagrees with the quadruple by more than 1e-12.
double resolve_sigma(const MaterialParams& material);

struct ZeroProfile {};
struct SineProfile {
  int k = 1;
  double amplitude = 1.0;
};
struct PluckProfile {
  double x0 = 0.5;
  double height = 1.0;
};
struct GaussianProfile {
  double center = 0.5;
  double width = 0.1;
  double amplitude = 1.0;
};
struct ModeProfile {
  int n = 1;
  double amplitude = 1.0;
};
struct SampledProfile {
  std::vector<double> x;
  std::vector<double> values;
};

using Profile =
    std::variant<ZeroProfile, SineProfile, PluckProfile, GaussianProfile, ModeProfile, SampledProfile>;

struct InitialState {
  Profile u0 = ZeroProfile{};
  Profile v0 = ZeroProfile{};
};

/// Checks the profile against the beam geometry (sample endpoints, pluck
/// position, mode index). Throws std::invalid_argument.
void validate(const Profile& profile, double length, int mode_count);

/// Profile value at x. `modes` is consulted only by ModeProfile.
double evaluate_profile(const Profile& profile, double x, double length,
                        std::span<const EigenMode> modes);

/// Breakpoints where the profile has kinks (sample abscissae, pluck apex).
std::vector<double> profile_breakpoints(const Profile& profile);

struct ModalCoefficients {
  Eigen::VectorXd displacement;  // p_n = <psi_n, u0>
  Eigen::VectorXd velocity;      // q_n = <psi_n, v0>
};

ModalCoefficients project(const InitialState& initial, std::span<const EigenMode> modes,
                          const QuadratureSettings& quad);

struct ModalState {
  Eigen::VectorXd displacement;  // c_n(t)
  Eigen::VectorXd velocity;      // c_n'(t)
};

/// Exact per-mode evolution; zero-eigenvalue modes drift linearly.
ModalState coefficients_at(const ModalCoefficients& coeffs, std::span<const EigenMode> modes,
                           double sigma, double t);

struct SolutionFrame {
  double t = 0.0;
  Eigen::VectorXd x;
  Eigen::VectorXd displacement;
  Eigen::VectorXd velocity;
};

SolutionFrame evaluate_solution(const ModalCoefficients& coeffs, std::span<const EigenMode> modes,
                                double sigma, const Eigen::Ref<const Eigen::VectorXd>& xs,
                                double t);

/// 1/2 sum (c_n'^2 + omega_n^2 c_n^2).
double modal_energy(const ModalCoefficients& coeffs, std::span<const EigenMode> modes,
                    double sigma, double t);

/// Starts every mode with omega_n > 0 from c_n(0) = p_n and
/// c_n'(0) = i omega_n p_n and returns the largest deviation of c_n(t) from
/// e^{i omega_n t} p_n, including the modulus deviation | |c_n(t)| - |p_n| |.
double unitary_phase_check(const Eigen::Ref<const Eigen::VectorXd>& p,
                           std::span<const EigenMode> modes, double sigma, double t);

/// Sum over n > keep of (p_n^2 + q_n^2); the CLI reports it with
/// keep = N - 2 as a truncation diagnostic.
double tail_magnitude(const ModalCoefficients& coeffs, int keep);

/// n uniformly spaced points covering [0, length], endpoints exact.
Eigen::VectorXd uniform_grid(double length, int points);

}  // namespace beamspec
