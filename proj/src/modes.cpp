#include "beamspec/modes.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace beamspec {

namespace {

// k-th derivative of cos(t) and sin(t).
double cos_derivative(int k, double t) {
  switch (k % 4) {
    case 0: return std::cos(t);
    case 1: return -std::sin(t);
    case 2: return -std::cos(t);
    default: return std::sin(t);
  }
}

double sin_derivative(int k, double t) { return cos_derivative(k + 3, t); }

double eval_form(const ShapeForm& form, double length, double x, int order) {
  return std::visit(
      [&](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, TrigShape>) {
          const double scale = s.amplitude * std::pow(s.wavenumber, order);
          const double t = s.wavenumber * x;
          return scale * (s.kind == TrigShape::Kind::Sine ? sin_derivative(order, t)
                                                          : cos_derivative(order, t));
        } else if constexpr (std::is_same_v<T, GeneralShape>) {
          const double k = s.kappa;
          const double kx = k * x;
          const double decay_left = std::exp(-kx);
          const double decay_right = std::exp(-(k * length - kx));
          const double value = (order % 2 == 0 ? 1.0 : -1.0) * s.coeffs(0) * decay_left +
                               s.coeffs(1) * decay_right + s.coeffs(2) * cos_derivative(order, kx) +
                               s.coeffs(3) * sin_derivative(order, kx);
          return std::pow(k, order) * value;
        } else {
          if (order == 0) return s.a + s.b * x;
          if (order == 1) return s.b;
          return 0.0;
        }
      },
      form);
}

double eval_shape(const ModeShape& shape, double length, double x, int order) {
  if (!shape.reflected) return eval_form(shape.form, length, x, order);
  const double v = eval_form(shape.form, length, length - x, order);
  return order % 2 == 0 ? v : -v;
}

// Null vector of a rank-3 4x4 matrix by full-pivot elimination.
Eigen::Vector4d null_vector(const Eigen::Matrix4d& m, double kl) {
  const Eigen::FullPivLU<Eigen::Matrix4d> lu(m);
  const Eigen::Matrix4d u = lu.matrixLU().triangularView<Eigen::Upper>();
  const Eigen::Vector4d pivots = u.diagonal().cwiseAbs();
  if (pivots(3) / pivots(0) >= 1e-7 || pivots(2) / pivots(0) < 1e-6) {
    std::ostringstream msg;
    msg << "characteristic matrix at kl = " << kl << " is not of rank 3 (pivots "
        << pivots.transpose() << ")";
    throw DegenerateRootError(msg.str());
  }
  Eigen::Vector4d y;
  y(3) = 1.0;
  y.head<3>() = u.topLeftCorner<3, 3>().triangularView<Eigen::Upper>().solve(-u.col(3).head<3>());
  return lu.permutationQ() * y;
}

double norm_squared(const ShapeForm& form, double length, int index) {
  const auto rule = composite_rule(length, QuadratureSettings::for_modes(index));
  return rule.apply([&](double x) {
    const double v = eval_form(form, length, x, 0);
    return v * v;
  });
}

GeneralShape general_shape(const SupportCase& c, const EigenvalueRecord& record,
                           const BeamGeometry& geom) {
  const double l = geom.length;
  GeneralShape shape;
  shape.kappa = record.kappa;
  shape.coeffs = null_vector(characteristic_matrix(c, record.kappa, geom), record.kappa * l);
  shape.coeffs /= std::sqrt(norm_squared(shape, l, record.index));

  // Sign: first derivative order that does not vanish at x = 0 is positive.
  const double scale = 1.0 / std::sqrt(l);
  for (int order = 0; order < 4; ++order) {
    const double v = eval_form(shape, l, 0.0, order) / std::pow(record.kappa, order);
    if (std::abs(v) > 1e-6 * scale) {
      if (v < 0.0) shape.coeffs = -shape.coeffs;
      break;
    }
  }
  return shape;
}

TrigShape closed_form_shape(const SupportCase& c, const EigenvalueRecord& record,
                            const BeamGeometry& geom) {
  const double amp = std::sqrt(2.0 / geom.length);
  switch (c.name) {
    case CaseName::AA:
    case CaseName::Add2: return {TrigShape::Kind::Sine, record.kappa, amp};
    case CaseName::Add1:
    case CaseName::Add3: return {TrigShape::Kind::Cosine, record.kappa, amp};
    default:
      throw std::invalid_argument("support " + std::string(to_string(c.name)) +
                                  " has no closed-form eigenfunctions");
  }
}

}  // namespace

EigenMode build_mode(const SupportCase& c, const EigenvalueRecord& record,
                     const BeamGeometry& geom) {
  validate(geom);
  EigenMode mode{record, {}, geom, {c.name, false}};
  switch (record.origin) {
    case EigenOrigin::ClosedForm: mode.shape.form = closed_form_shape(c, record, geom); break;
    case EigenOrigin::RigidBody: {
      const auto shapes = zero_modes(c, geom);
      if (record.index < 1 || record.index > static_cast<int>(shapes.size())) {
        throw std::invalid_argument("no rigid-body mode " + std::to_string(record.index) +
                                    " for support " + std::string(to_string(c.name)));
      }
      mode.shape.form = shapes[static_cast<std::size_t>(record.index - 1)];
      break;
    }
    case EigenOrigin::DeterminantRoot: mode.shape.form = general_shape(c, record, geom); break;
  }
  return mode;
}

EigenMode build_mode(const ResolvedCase& rc, const EigenvalueRecord& record,
                     const BeamGeometry& geom) {
  EigenMode mode = build_mode(support_case(rc.name), record, geom);
  mode.support = rc;
  mode.shape.reflected = rc.reflected;
  return mode;
}

std::vector<EigenMode> build_modes(const ResolvedCase& rc, const BeamGeometry& geom, int count) {
  const auto& c = support_case(rc.name);
  std::vector<EigenMode> modes;
  for (const auto& record : eigenvalues(c, geom, count)) {
    EigenMode mode = build_mode(rc, record, geom);
    const double residual = bv_residual(mode);
    if (!(residual <= bv_tolerance(record.index))) {
      std::ostringstream msg;
      msg << "mode " << record.index << " of " << to_string(rc) << " has boundary residual "
          << residual << " above tolerance " << bv_tolerance(record.index);
      throw std::runtime_error(msg.str());
    }
    modes.push_back(std::move(mode));
  }
  return modes;
}

double evaluate(const EigenMode& mode, double x, int order) {
  const double l = mode.geometry.length;
  if (!(x >= 0.0 && x <= l)) {
    std::ostringstream msg;
    msg << "evaluation point " << x << " outside [0, " << l << "]";
    throw std::out_of_range(msg.str());
  }
  if (order < 0 || order > 4) throw std::invalid_argument("derivative order must be in [0, 4]");
  return eval_shape(mode.shape, l, x, order);
}

Eigen::VectorXd evaluate(const EigenMode& mode, const Eigen::Ref<const Eigen::VectorXd>& xs,
                         int order) {
  Eigen::VectorXd out(xs.size());
  for (Eigen::Index i = 0; i < xs.size(); ++i) out(i) = evaluate(mode, xs(i), order);
  return out;
}

Eigen::MatrixXd gram_matrix(std::span<const EigenMode> modes, const QuadratureSettings& quad) {
  if (modes.empty()) return {};
  const auto& first = modes.front();
  for (const auto& m : modes) {
    if (!(m.support == first.support) || m.geometry.length != first.geometry.length) {
      throw std::invalid_argument("gram_matrix needs modes of one support and geometry");
    }
  }
  const auto rule = composite_rule(first.geometry.length, quad);
  Eigen::MatrixXd samples(rule.points.size(), static_cast<Eigen::Index>(modes.size()));
  for (Eigen::Index j = 0; j < samples.cols(); ++j) {
    samples.col(j) = evaluate(modes[static_cast<std::size_t>(j)], rule.points);
  }
  return samples.transpose() * rule.weights.asDiagonal() * samples;
}

double bv_residual(const EigenMode& mode) {
  const double l = mode.geometry.length;
  const double kappa = mode.record.kappa;
  double worst = 0.0;
  for (const auto& bc : physical_constraints(mode.support)) {
    const double x = bc.end == EndPoint::Left ? 0.0 : l;
    const double scale = std::max(1.0, std::pow(kappa, bc.order));
    worst = std::max(worst, std::abs(evaluate(mode, x, bc.order)) / scale);
  }
  return worst;
}

double bv_tolerance(int index) {
  if (index <= 4) return 1e-8;
  if (index >= 12) return 1e-6;
  return 1e-8 * std::pow(10.0, 2.0 * (index - 4) / 8.0);
}

double omega(const EigenMode& mode, double sigma) {
  return sigma * mode.record.kappa * mode.record.kappa;
}

}  // namespace beamspec
