#include "pushpull/form_field.hpp"

#include <cmath>

namespace pushpull {

FormField::FormField(ChartDomain chart_, int degree_, CoeffFn coeffs_, MaskFn mask_)
    : chart(std::move(chart_)),
      degree(degree_),
      coeffs(std::move(coeffs_)),
      support_mask(std::move(mask_)) {
  if (degree < 0 || degree > chart.dim()) {
    throw DegreeRangeError("form degree out of range for chart dimension");
  }
  if (!coeffs) throw ArgumentError("form requires a coefficient function");
}

FormField FormField::constant(ChartDomain chart, int degree, Vector values) {
  const auto expected = binomial(chart.dim(), degree);
  if (values.size() != expected) {
    throw ShapeError("constant form needs " + std::to_string(expected) + " components");
  }
  return FormField(std::move(chart), degree,
                   [values](const Vector&) { return values; });
}

bool FormField::supported_at(const Vector& x) const {
  if (!support_mask) return true;
  return support_mask(chart.wrap(x));
}

Vector FormField::coeffs_at(const Vector& x) const {
  const auto expected = binomial(chart.dim(), degree);
  if (support_mask && !support_mask(chart.wrap(x))) {
    return Vector::Zero(expected);
  }
  Vector values = coeffs(chart.wrap(x));
  if (values.size() != expected) {
    throw ShapeError("coefficient function returned wrong length");
  }
  return values;
}

FormField pullback(const Diffeomorphism& phi, const FormField& eta) {
  if (eta.degree > phi.source.dim()) throw ShapeError("pullback degree mismatch");
  if (eta.chart.dim() != phi.target.dim()) {
    throw ShapeError("pullback expects a form on the target chart");
  }
  const int k = eta.degree;
  FormField result;
  result.chart = phi.source;
  result.degree = k;
  result.coeffs = [phi, eta, k](const Vector& x) -> Vector {
    const Matrix jac = jacobian_matrix(phi, x);
    const Vector target_coeffs = eta.coeffs_at(phi.map_forward(x));
    return compound(jac, k).transpose() * target_coeffs;
  };
  if (eta.support_mask) {
    auto mask = eta.support_mask;
    auto tgt = eta.chart;
    result.support_mask = [phi, mask, tgt](const Vector& x) {
      return mask(tgt.wrap(phi.forward(x)));
    };
  }
  return result;
}

FormField pushforward(const Diffeomorphism& phi, const FormField& omega) {
  if (omega.chart.dim() != phi.source.dim()) {
    throw ShapeError("pushforward expects a form on the source chart");
  }
  return pullback(phi.inverted(), omega);
}

double pointwise_norm(const FormField& omega, const Vector& x) {
  const int n = omega.chart.dim();
  const int k = omega.degree;
  const Vector values = omega.coeffs_at(x);
  if (k == 0) return std::abs(values[0]);
  const Matrix frame = orthonormal_frame(omega.chart, x);
  const Vector frame_coeffs = compound(frame, k).transpose() * values;
  return comass_norm(AlternatingTensor(n, k, frame_coeffs));
}

double lp_norm(const FormField& omega, double p, const QuadratureRule& rule,
               int sup_samples) {
  if (std::isinf(p)) {
    return sup_norm_estimate(
        omega.chart, [&omega](const Vector& x) { return pointwise_norm(omega, x); },
        sup_samples, &rule);
  }
  if (!(p >= 1.0)) throw ArgumentError("exponent p must satisfy p >= 1");
  const double integral = integrate(
      omega.chart,
      [&omega, p](const Vector& x) { return std::pow(pointwise_norm(omega, x), p); },
      rule);
  return std::pow(integral, 1.0 / p);
}

PointwiseBoundReport verify_pointwise_bounds(const Diffeomorphism& phi,
                                             const FormField& omega,
                                             const std::vector<Vector>& points,
                                             double tolerance) {
  const int n = phi.source.dim();
  const int k = omega.degree;
  const FormField pushed = pushforward(phi, omega);
  const FormField round_trip = pullback(phi, pushed);

  PointwiseBoundReport report;
  report.tolerance = tolerance;
  for (const Vector& x : points) {
    const Vector y = phi.map_forward(x);
    const SingularSpectrum alpha = singular_spectrum(phi, x);
    const SingularSpectrum beta = inverse_spectrum(phi, y);

    const double omega_norm = pointwise_norm(omega, x);
    const double pushed_norm = pointwise_norm(pushed, y);

    // (pushforward) |phi_* omega|(phi x) <= beta_1...beta_k(phi x) |omega|(x)
    const double push_violation = pushed_norm - beta.top_product(k) * omega_norm;
    // (pullback, applied to eta = phi_* omega)
    const double pull_violation =
        pointwise_norm(round_trip, x) - alpha.top_product(k) * pushed_norm;

    for (double violation : {push_violation, pull_violation}) {
      ++report.points_checked;
      if (violation > report.max_violation) {
        report.max_violation = violation;
        report.worst_point = x;
      }
      if (violation > tolerance) ++report.violations_above_tol;
    }
  }
  return report;
}

}  // namespace pushpull
