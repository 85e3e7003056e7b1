#pragma once

#include <vector>

#include <Eigen/Dense>

#include "beamspec/evolution.hpp"
#include "beamspec/quadrature.hpp"

namespace beamspec {

// Vibrating string with fixed ends, u_tt = c^2 u_xx on (0, l), and its
// comparison with the simply supported (AA) beam, whose eigenfunctions are
// the same sines.

struct StringConfig {
  double length = 1.0;
  double wave_speed = 1.0;
};

void validate(const StringConfig& cfg);

struct StringEigenpair {
  int index = 0;
  double eigenvalue = 0.0;  // (n pi / l)^2
  double wavenumber = 0.0;  // n pi / l
  double amplitude = 0.0;   // sqrt(2 / l)
};

std::vector<StringEigenpair> string_spectrum(const StringConfig& cfg, int count);

/// sqrt(2/l) sin(n pi x / l)
double string_mode(const StringEigenpair& pair, double x);

/// S_n = (2/l) int u0 sin(n pi x/l) dx and the same for the velocity, so
/// that <psi_n, u0> = sqrt(l/2) S_n.
struct FourierCoefficients {
  Eigen::VectorXd sine;       // S_n
  Eigen::VectorXd sine_rate;  // S'_n
};

/// ModeProfile entries refer to the string eigenfunctions.
FourierCoefficients fourier_coefficients(const InitialState& initial, const StringConfig& cfg,
                                         const QuadratureSettings& quad, int count);

double string_omega(int n, const StringConfig& cfg);

double string_solution(const FourierCoefficients& coeffs, const StringConfig& cfg, double x,
                       double t);

/// Simply supported beam seen as a dispersive medium.
struct BeamMedium {
  double length = 1.0;
  double sigma = 1.0;
};

/// c_n = n pi sigma / l
double beam_wave_speed(int n, const BeamMedium& beam);
/// (n pi / l)^2 sigma
double beam_omega(int n, const BeamMedium& beam);

double beam_solution(const FourierCoefficients& coeffs, const BeamMedium& beam, double x, double t);

struct TravelingSplit {
  double left = 0.0;   // running towards x = 0
  double right = 0.0;  // running towards x = l
};

/// Mode n of the standing-wave series split into two travelling waves with
/// A_n = S_n and B_n = S'_n / omega_n.
TravelingSplit traveling_decomposition(int n, const FourierCoefficients& coeffs,
                                       const StringConfig& cfg, double x, double t);
TravelingSplit traveling_decomposition(int n, const FourierCoefficients& coeffs,
                                       const BeamMedium& beam, double x, double t);

/// The n-th summand of the standing-wave series at (x, t), for a medium
/// with phase speed `speed` of mode n.
double standing_term(int n, const FourierCoefficients& coeffs, double length, double speed,
                     double x, double t);

struct DispersionRow {
  int n = 0;
  double omega_wave = 0.0;
  double wave_speed = 0.0;
  double omega_beam = 0.0;
  double beam_speed = 0.0;
};

std::vector<DispersionRow> dispersion_table(const StringConfig& cfg, double sigma, int count);

}  // namespace beamspec
