#include "beamspec/string_wave.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace beamspec {

namespace {

constexpr double kPi = std::numbers::pi;

TravelingSplit split(int n, const FourierCoefficients& coeffs, double length, double speed,
                     double x, double t) {
  const auto i = static_cast<Eigen::Index>(n - 1);
  const double k = n * kPi / length;
  const double w = k * speed;
  const double a = coeffs.sine(i);
  const double b = coeffs.sine_rate(i) / w;
  const double ahead = k * (x + speed * t);
  const double behind = k * (x - speed * t);
  return {0.5 * (a * std::sin(ahead) - b * std::cos(ahead)),
          0.5 * (a * std::sin(behind) + b * std::cos(behind))};
}

void check_index(int n, const FourierCoefficients& coeffs) {
  if (n < 1 || n > coeffs.sine.size()) throw std::out_of_range("mode index out of range");
}

}  // namespace

void validate(const StringConfig& cfg) {
  if (!(cfg.length > 0.0)) throw std::invalid_argument("string length must be positive");
  if (!(cfg.wave_speed > 0.0)) throw std::invalid_argument("wave speed must be positive");
}

std::vector<StringEigenpair> string_spectrum(const StringConfig& cfg, int count) {
  validate(cfg);
  if (count < 1) throw std::invalid_argument("mode count must be positive");
  std::vector<StringEigenpair> out;
  for (int n = 1; n <= count; ++n) {
    const double k = n * kPi / cfg.length;
    out.push_back({n, k * k, k, std::sqrt(2.0 / cfg.length)});
  }
  return out;
}

double string_mode(const StringEigenpair& pair, double x) {
  return pair.amplitude * std::sin(pair.wavenumber * x);
}

FourierCoefficients fourier_coefficients(const InitialState& initial, const StringConfig& cfg,
                                         const QuadratureSettings& quad, int count) {
  validate(cfg);
  if (count < 1) throw std::invalid_argument("mode count must be positive");
  const double l = cfg.length;
  const double amp = std::sqrt(2.0 / l);
  auto as_sines = [&](const Profile& p) -> Profile {
    if (const auto* m = std::get_if<ModeProfile>(&p)) return SineProfile{m->n, m->amplitude * amp};
    return p;
  };
  const Profile u0 = as_sines(initial.u0);
  const Profile v0 = as_sines(initial.v0);
  validate(u0, l, count);
  validate(v0, l, count);

  std::vector<double> breaks = profile_breakpoints(u0);
  const auto more = profile_breakpoints(v0);
  breaks.insert(breaks.end(), more.begin(), more.end());
  const auto rule = composite_rule(l, quad, breaks);

  FourierCoefficients out{Eigen::VectorXd::Zero(count), Eigen::VectorXd::Zero(count)};
  for (Eigen::Index i = 0; i < rule.points.size(); ++i) {
    const double x = rule.points(i);
    const double wu = rule.weights(i) * evaluate_profile(u0, x, l, {});
    const double wv = rule.weights(i) * evaluate_profile(v0, x, l, {});
    for (int n = 1; n <= count; ++n) {
      const double s = std::sin(n * kPi * x / l);
      out.sine(n - 1) += wu * s;
      out.sine_rate(n - 1) += wv * s;
    }
  }
  out.sine *= 2.0 / l;
  out.sine_rate *= 2.0 / l;
  return out;
}

double string_omega(int n, const StringConfig& cfg) { return n * kPi / cfg.length * cfg.wave_speed; }

double standing_term(int n, const FourierCoefficients& coeffs, double length, double speed,
                     double x, double t) {
  check_index(n, coeffs);
  const auto i = static_cast<Eigen::Index>(n - 1);
  const double k = n * kPi / length;
  const double w = k * speed;
  return (coeffs.sine(i) * std::cos(w * t) + coeffs.sine_rate(i) / w * std::sin(w * t)) *
         std::sin(k * x);
}

double string_solution(const FourierCoefficients& coeffs, const StringConfig& cfg, double x,
                       double t) {
  double u = 0.0;
  for (int n = 1; n <= coeffs.sine.size(); ++n) {
    u += standing_term(n, coeffs, cfg.length, cfg.wave_speed, x, t);
  }
  return u;
}

double beam_wave_speed(int n, const BeamMedium& beam) { return n * kPi / beam.length * beam.sigma; }

double beam_omega(int n, const BeamMedium& beam) {
  const double k = n * kPi / beam.length;
  return k * k * beam.sigma;
}

double beam_solution(const FourierCoefficients& coeffs, const BeamMedium& beam, double x,
                     double t) {
  double u = 0.0;
  for (int n = 1; n <= coeffs.sine.size(); ++n) {
    u += standing_term(n, coeffs, beam.length, beam_wave_speed(n, beam), x, t);
  }
  return u;
}

TravelingSplit traveling_decomposition(int n, const FourierCoefficients& coeffs,
                                       const StringConfig& cfg, double x, double t) {
  check_index(n, coeffs);
  return split(n, coeffs, cfg.length, cfg.wave_speed, x, t);
}

TravelingSplit traveling_decomposition(int n, const FourierCoefficients& coeffs,
                                       const BeamMedium& beam, double x, double t) {
  check_index(n, coeffs);
  return split(n, coeffs, beam.length, beam_wave_speed(n, beam), x, t);
}

std::vector<DispersionRow> dispersion_table(const StringConfig& cfg, double sigma, int count) {
  validate(cfg);
  if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
  if (count < 1) throw std::invalid_argument("mode count must be positive");
  const BeamMedium beam{cfg.length, sigma};
  std::vector<DispersionRow> rows;
  for (int n = 1; n <= count; ++n) {
    rows.push_back({n, string_omega(n, cfg), cfg.wave_speed, beam_omega(n, beam),
                    beam_wave_speed(n, beam)});
  }
  return rows;
}

}  // namespace beamspec
