#include "beamspec/spectrum.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

namespace beamspec {

namespace {

constexpr double kPi = std::numbers::pi;
// Below kl ~ 0.5 the four basis columns are nearly dependent and the
// determinant of a kernel-free case is O((kl)^4), so its sign is noise.
constexpr double kScanStart = 0.5;
constexpr double kScanStep = kPi / 8.0;
constexpr double kRootRelWidth = 1e-13;

void check_count(int count) {
  if (count < 1 || count > kMaxModes) {
    throw std::invalid_argument("mode count must be in [1, " + std::to_string(kMaxModes) +
                                "], got " + std::to_string(count));
  }
}

// One row of the dimensionless characteristic matrix: constraint of the
// given derivative order at s = x/l in {0, 1}, for mu = kappa * l.
Eigen::RowVector4d basis_row(int order, double s, double mu, CharacteristicBasis basis) {
  const double arg = mu * s;
  const double c = std::cos(arg);
  const double sn = std::sin(arg);
  double trig_c = 0.0;
  double trig_s = 0.0;
  switch (order) {
    case 0: trig_c = c; trig_s = sn; break;
    case 1: trig_c = -sn; trig_s = c; break;
    case 2: trig_c = -c; trig_s = -sn; break;
    default: trig_c = sn; trig_s = -c; break;
  }

  Eigen::RowVector4d row;
  if (basis == CharacteristicBasis::Exponential) {
    const double decay_left = std::exp(-arg);
    const double decay_right = std::exp(-(mu - arg));
    row << (order % 2 == 0 ? decay_left : -decay_left), decay_right, trig_c, trig_s;
  } else {
    // cosh(mu s)/cosh(mu) and sinh(mu s)/cosh(mu) without overflow.
    const double denom = 1.0 + std::exp(-2.0 * mu);
    const double lead = std::exp(arg - mu);
    const double ch = lead * (1.0 + std::exp(-2.0 * arg)) / denom;
    const double sh = lead * (1.0 - std::exp(-2.0 * arg)) / denom;
    if (order % 2 == 0) {
      row << ch, sh, trig_c, trig_s;
    } else {
      row << sh, ch, trig_c, trig_s;
    }
  }
  return row;
}

Eigen::Matrix4d dimensionless_matrix(const SupportCase& c, double mu, CharacteristicBasis basis) {
  Eigen::Matrix4d m;
  for (int r = 0; r < 4; ++r) {
    const auto& bc = c.constraints[static_cast<std::size_t>(r)];
    const double s = bc.end == EndPoint::Left ? 0.0 : 1.0;
    m.row(r) = basis_row(bc.order, s, mu, basis);
  }
  return m;
}

double dimensionless_det(const SupportCase& c, double mu) {
  return dimensionless_matrix(c, mu, CharacteristicBasis::Exponential).determinant();
}

}  // namespace

void validate(const BeamGeometry& geom) {
  if (!(geom.length > 0.0) || !std::isfinite(geom.length)) {
    throw std::invalid_argument("beam length must be positive and finite");
  }
}

std::vector<EigenvalueRecord> analytic_spectrum(const SupportCase& c, const BeamGeometry& geom,
                                                int count) {
  validate(geom);
  check_count(count);
  if (c.group != Group::AnalyticI) {
    throw std::invalid_argument("support " + std::string(to_string(c.name)) +
                                " has no closed-form spectrum; use find_kappas");
  }
  const double l = geom.length;
  std::vector<EigenvalueRecord> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int n = 1; n <= count; ++n) {
    double kappa = 0.0;
    EigenOrigin origin = EigenOrigin::ClosedForm;
    switch (c.name) {
      case CaseName::AA: kappa = n * kPi / l; break;
      case CaseName::Add1:
        kappa = (n - 1) * kPi / l;
        if (n == 1) origin = EigenOrigin::RigidBody;
        break;
      default: kappa = (2 * n - 1) * kPi / (2.0 * l); break;
    }
    out.push_back({n, kappa, kappa * kappa * kappa * kappa, origin});
  }
  return out;
}

Eigen::Matrix4d characteristic_matrix(const SupportCase& c, double kappa,
                                      const BeamGeometry& geom, CharacteristicBasis basis) {
  validate(geom);
  if (!(kappa > 0.0)) throw std::invalid_argument("characteristic matrix needs kappa > 0");
  return dimensionless_matrix(c, kappa * geom.length, basis);
}

double characteristic_function(const SupportCase& c, double kappa, const BeamGeometry& geom,
                               CharacteristicBasis basis) {
  return characteristic_matrix(c, kappa, geom, basis).determinant();
}

double pivot_ratio(const Eigen::Matrix4d& m) {
  const Eigen::FullPivLU<Eigen::Matrix4d> lu(m);
  const Eigen::Vector4d pivots = lu.matrixLU().diagonal().cwiseAbs();
  if (pivots(0) == 0.0) return 0.0;
  return pivots(3) / pivots(0);
}

std::vector<double> find_kappas(const SupportCase& c, const BeamGeometry& geom, int count) {
  validate(geom);
  check_count(count);

  const double ceiling = (count + c.kernel_dimension + 3) * kPi;
  std::vector<double> roots;
  roots.reserve(static_cast<std::size_t>(count));

  double lo = kScanStart;
  double f_lo = dimensionless_det(c, lo);
  while (static_cast<int>(roots.size()) < count) {
    if (lo > ceiling) {
      std::ostringstream msg;
      msg << "root scan for " << to_string(c.name) << " found " << roots.size() << " of "
          << count << " roots below the scan ceiling kl = " << ceiling;
      throw RootScanError(msg.str());
    }
    const double hi = lo + kScanStep;
    const double f_hi = dimensionless_det(c, hi);
    if (f_lo == 0.0 || std::signbit(f_lo) != std::signbit(f_hi)) {
      double a = lo;
      double b = hi;
      double fa = f_lo;
      while (b - a > kRootRelWidth * b) {
        const double mid = 0.5 * (a + b);
        if (mid <= a || mid >= b) break;
        const double fm = dimensionless_det(c, mid);
        if (fm == 0.0) {
          a = b = mid;
          break;
        }
        if (std::signbit(fm) == std::signbit(fa)) {
          a = mid;
          fa = fm;
        } else {
          b = mid;
        }
      }
      const double mu = 0.5 * (a + b);

      const Eigen::FullPivLU<Eigen::Matrix4d> lu(
          dimensionless_matrix(c, mu, CharacteristicBasis::Exponential));
      const Eigen::Vector4d pivots = lu.matrixLU().diagonal().cwiseAbs();
      if (pivots(3) / pivots(0) >= 1e-7 || pivots(2) / pivots(0) < 1e-6) {
        std::ostringstream msg;
        msg << "characteristic matrix of " << to_string(c.name) << " at kl = " << mu
            << " is not of rank 3 (pivots " << pivots.transpose() << ")";
        throw DegenerateRootError(msg.str());
      }
      roots.push_back(mu);
    }
    lo = hi;
    f_lo = f_hi;
  }

  for (double& r : roots) r /= geom.length;
  return roots;
}

std::vector<PolynomialShape> zero_modes(const SupportCase& c, const BeamGeometry& geom) {
  validate(geom);
  const double l = geom.length;
  switch (c.name) {
    case CaseName::Add1: return {{1.0 / std::sqrt(l), 0.0}};
    case CaseName::AC: return {{0.0, std::sqrt(3.0 / (l * l * l))}};
    case CaseName::CC: {
      const double slope = std::sqrt(12.0 / (l * l * l));
      return {{1.0 / std::sqrt(l), 0.0}, {-0.5 * l * slope, slope}};
    }
    default: return {};
  }
}

std::vector<EigenvalueRecord> eigenvalues(const SupportCase& c, const BeamGeometry& geom,
                                          int count) {
  if (c.group == Group::AnalyticI) return analytic_spectrum(c, geom, count);
  check_count(count);

  std::vector<EigenvalueRecord> out;
  const int rigid = std::min(count, c.kernel_dimension);
  for (int n = 1; n <= rigid; ++n) out.push_back({n, 0.0, 0.0, EigenOrigin::RigidBody});
  if (count > rigid) {
    const auto kappas = find_kappas(c, geom, count - rigid);
    int n = rigid;
    for (double k : kappas) out.push_back({++n, k, k * k * k * k, EigenOrigin::DeterminantRoot});
  }
  return out;
}

}  // namespace beamspec
