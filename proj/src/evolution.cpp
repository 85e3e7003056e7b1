#include "beamspec/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace beamspec {

double resolve_sigma(const MaterialParams& m) {
  auto positive = [](std::optional<double> v, const char* name) {
    if (v && !(*v > 0.0 && std::isfinite(*v))) {
      throw std::invalid_argument(std::string("material parameter ") + name +
                                  " must be positive and finite");
    }
  };
  positive(m.sigma, "sigma");
  positive(m.elasticity, "E");
  positive(m.area_moment, "I");
  positive(m.density, "rho");
  positive(m.area, "area");

  const int given = int(m.elasticity.has_value()) + int(m.area_moment.has_value()) +
                    int(m.density.has_value()) + int(m.area.has_value());
  if (given != 0 && given != 4) {
    throw std::invalid_argument("material needs all of E, I, rho, area or none of them");
  }
  if (given == 0) {
    if (!m.sigma) throw std::invalid_argument("material needs sigma or E, I, rho, area");
    return *m.sigma;
  }
  const double derived = std::sqrt(*m.elasticity * *m.area_moment / (*m.density * *m.area));
  if (m.sigma && std::abs(*m.sigma - derived) > 1e-12 * derived) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "sigma = " << *m.sigma << " disagrees with sqrt(E I / (rho A)) = " << derived;
    throw std::invalid_argument(msg.str());
  }
  return derived;
}

void validate(const Profile& profile, double length, int mode_count) {
  std::visit(
      [&](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, SineProfile>) {
          if (p.k < 1) throw std::invalid_argument("sine profile needs k >= 1");
        } else if constexpr (std::is_same_v<T, PluckProfile>) {
          if (!(p.x0 > 0.0 && p.x0 < length)) {
            throw std::invalid_argument("pluck position must lie strictly inside (0, l)");
          }
        } else if constexpr (std::is_same_v<T, GaussianProfile>) {
          if (!(p.width > 0.0)) throw std::invalid_argument("gaussian width must be positive");
        } else if constexpr (std::is_same_v<T, ModeProfile>) {
          if (p.n < 1 || p.n > mode_count) {
            throw std::invalid_argument("mode profile index " + std::to_string(p.n) +
                                        " outside the " + std::to_string(mode_count) +
                                        " modes of this run");
          }
        } else if constexpr (std::is_same_v<T, SampledProfile>) {
          if (p.x.size() < 2 || p.x.size() != p.values.size()) {
            throw std::invalid_argument(
                "sampled profile needs at least two points and matching x/value arrays");
          }
          if (std::ranges::adjacent_find(p.x, std::greater_equal<>{}) != p.x.end()) {
            throw std::invalid_argument("sampled profile abscissae must be strictly increasing");
          }
          const double tol = 1e-12 * length;
          if (std::abs(p.x.front()) > tol || std::abs(p.x.back() - length) > tol) {
            std::ostringstream msg;
            msg << "sampled profile must span [0, " << length << "], got [" << p.x.front()
                << ", " << p.x.back() << "]";
            throw std::invalid_argument(msg.str());
          }
        }
      },
      profile);
}

double evaluate_profile(const Profile& profile, double x, double length,
                        std::span<const EigenMode> modes) {
  return std::visit(
      [&](const auto& p) -> double {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, ZeroProfile>) {
          return 0.0;
        } else if constexpr (std::is_same_v<T, SineProfile>) {
          return p.amplitude * std::sin(p.k * std::numbers::pi * x / length);
        } else if constexpr (std::is_same_v<T, PluckProfile>) {
          return x <= p.x0 ? p.height * x / p.x0 : p.height * (length - x) / (length - p.x0);
        } else if constexpr (std::is_same_v<T, GaussianProfile>) {
          const double z = (x - p.center) / p.width;
          return p.amplitude * std::exp(-0.5 * z * z);
        } else if constexpr (std::is_same_v<T, ModeProfile>) {
          return p.amplitude * evaluate(modes[static_cast<std::size_t>(p.n - 1)], x);
        } else {
          if (x <= p.x.front()) return p.values.front();
          if (x >= p.x.back()) return p.values.back();
          const auto it = std::ranges::upper_bound(p.x, x);
          const auto i = static_cast<std::size_t>(it - p.x.begin());
          const double w = (x - p.x[i - 1]) / (p.x[i] - p.x[i - 1]);
          return (1.0 - w) * p.values[i - 1] + w * p.values[i];
        }
      },
      profile);
}

std::vector<double> profile_breakpoints(const Profile& profile) {
  if (const auto* s = std::get_if<SampledProfile>(&profile)) return s->x;
  if (const auto* p = std::get_if<PluckProfile>(&profile)) return {p->x0};
  return {};
}

namespace {

void check_same_beam(std::span<const EigenMode> modes) {
  for (const auto& m : modes) {
    if (!(m.support == modes.front().support) ||
        m.geometry.length != modes.front().geometry.length) {
      throw std::invalid_argument("modes must share one support and geometry");
    }
  }
}

}  // namespace

ModalCoefficients project(const InitialState& initial, std::span<const EigenMode> modes,
                          const QuadratureSettings& quad) {
  const auto n = static_cast<Eigen::Index>(modes.size());
  ModalCoefficients out{Eigen::VectorXd::Zero(n), Eigen::VectorXd::Zero(n)};
  if (modes.empty()) return out;
  check_same_beam(modes);
  const double l = modes.front().geometry.length;
  validate(initial.u0, l, static_cast<int>(n));
  validate(initial.v0, l, static_cast<int>(n));

  std::vector<double> breaks = profile_breakpoints(initial.u0);
  const auto more = profile_breakpoints(initial.v0);
  breaks.insert(breaks.end(), more.begin(), more.end());
  const auto rule = composite_rule(l, quad, breaks);

  Eigen::VectorXd u0(rule.points.size());
  Eigen::VectorXd v0(rule.points.size());
  for (Eigen::Index i = 0; i < rule.points.size(); ++i) {
    u0(i) = evaluate_profile(initial.u0, rule.points(i), l, modes);
    v0(i) = evaluate_profile(initial.v0, rule.points(i), l, modes);
  }
  Eigen::MatrixXd psi(rule.points.size(), n);
  for (Eigen::Index j = 0; j < n; ++j) psi.col(j) = evaluate(modes[std::size_t(j)], rule.points);

  out.displacement = psi.transpose() * rule.weights.cwiseProduct(u0);
  out.velocity = psi.transpose() * rule.weights.cwiseProduct(v0);
  return out;
}

ModalState coefficients_at(const ModalCoefficients& coeffs, std::span<const EigenMode> modes,
                           double sigma, double t) {
  if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
  const auto n = static_cast<Eigen::Index>(modes.size());
  if (coeffs.displacement.size() != n || coeffs.velocity.size() != n) {
    throw std::invalid_argument("coefficient count does not match mode count");
  }
  ModalState s{Eigen::VectorXd(n), Eigen::VectorXd(n)};
  for (Eigen::Index i = 0; i < n; ++i) {
    const double p = coeffs.displacement(i);
    const double q = coeffs.velocity(i);
    const double w = omega(modes[std::size_t(i)], sigma);
    if (w == 0.0) {
      s.displacement(i) = p + t * q;
      s.velocity(i) = q;
    } else {
      const double c = std::cos(w * t);
      const double sn = std::sin(w * t);
      s.displacement(i) = c * p + sn / w * q;
      s.velocity(i) = -w * sn * p + c * q;
    }
  }
  return s;
}

SolutionFrame evaluate_solution(const ModalCoefficients& coeffs, std::span<const EigenMode> modes,
                                double sigma, const Eigen::Ref<const Eigen::VectorXd>& xs,
                                double t) {
  const ModalState s = coefficients_at(coeffs, modes, sigma, t);
  SolutionFrame frame{t, xs, Eigen::VectorXd::Zero(xs.size()), Eigen::VectorXd::Zero(xs.size())};
  for (std::size_t i = 0; i < modes.size(); ++i) {
    const Eigen::VectorXd psi = evaluate(modes[i], xs);
    frame.displacement += s.displacement(Eigen::Index(i)) * psi;
    frame.velocity += s.velocity(Eigen::Index(i)) * psi;
  }
  return frame;
}

double modal_energy(const ModalCoefficients& coeffs, std::span<const EigenMode> modes,
                    double sigma, double t) {
  const ModalState s = coefficients_at(coeffs, modes, sigma, t);
  double e = 0.0;
  for (std::size_t i = 0; i < modes.size(); ++i) {
    const double w = omega(modes[i], sigma);
    const double c = s.displacement(Eigen::Index(i));
    const double v = s.velocity(Eigen::Index(i));
    e += v * v + w * w * c * c;
  }
  return 0.5 * e;
}

double unitary_phase_check(const Eigen::Ref<const Eigen::VectorXd>& p,
                           std::span<const EigenMode> modes, double sigma, double t) {
  const auto n = static_cast<Eigen::Index>(modes.size());
  if (p.size() != n) throw std::invalid_argument("coefficient count does not match mode count");

  // Complex data as two real channels: u0 = p (real), v0 = i omega p
  // (imaginary).
  ModalCoefficients real_part{p, Eigen::VectorXd::Zero(n)};
  ModalCoefficients imag_part{Eigen::VectorXd::Zero(n), Eigen::VectorXd::Zero(n)};
  for (Eigen::Index i = 0; i < n; ++i) {
    imag_part.velocity(i) = omega(modes[std::size_t(i)], sigma) * p(i);
  }
  const ModalState re = coefficients_at(real_part, modes, sigma, t);
  const ModalState im = coefficients_at(imag_part, modes, sigma, t);

  double worst = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double w = omega(modes[std::size_t(i)], sigma);
    if (w == 0.0) continue;
    const std::complex<double> c(re.displacement(i), im.displacement(i));
    const std::complex<double> expected = std::polar(1.0, w * t) * p(i);
    worst = std::max(worst, std::abs(std::abs(c) - std::abs(p(i))));
    worst = std::max(worst, std::abs(c - expected));
  }
  return worst;
}

double tail_magnitude(const ModalCoefficients& coeffs, int keep) {
  double tail = 0.0;
  for (Eigen::Index i = std::max(0, keep); i < coeffs.displacement.size(); ++i) {
    tail += coeffs.displacement(i) * coeffs.displacement(i) +
            coeffs.velocity(i) * coeffs.velocity(i);
  }
  return tail;
}

Eigen::VectorXd uniform_grid(double length, int points) {
  if (points < 2) throw std::invalid_argument("grid needs at least two points");
  Eigen::VectorXd xs(points);
  for (int i = 0; i < points; ++i) xs(i) = length * i / (points - 1);
  xs(points - 1) = length;
  return xs;
}

}  // namespace beamspec
