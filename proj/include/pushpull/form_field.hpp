#pragma once

#include <functional>
#include <optional>

#include "pushpull/alternating.hpp"
#include "pushpull/diffeo.hpp"
#include "pushpull/quadrature.hpp"

namespace pushpull {

using CoeffFn = std::function<Vector(const Vector&)>;
using MaskFn = std::function<bool(const Vector&)>;

/// k-form on a chart, given by coordinate-cobasis coefficient functions in
/// lexicographic order.  An optional support mask restricts the form: outside
/// the mask the coefficients are treated as identically zero.
struct FormField {
  ChartDomain chart;
  int degree = 0;
  CoeffFn coeffs;
  MaskFn support_mask;  // empty means full support

  FormField() = default;
  FormField(ChartDomain chart_, int degree_, CoeffFn coeffs_, MaskFn mask_ = nullptr);

  static FormField constant(ChartDomain chart, int degree, Vector values);

  bool supported_at(const Vector& x) const;
  /// Coefficients at x (wrapped on periodic axes); zero outside the mask.
  Vector coeffs_at(const Vector& x) const;
};

/// Pullback along phi of a form on the target chart:
/// (phi^* eta)(x) = C_k(Dphi(x))^T eta(phi(x)).
FormField pullback(const Diffeomorphism& phi, const FormField& eta);

/// Pushforward = pullback along the inverse; the support mask transports
/// forward with the map.
FormField pushforward(const Diffeomorphism& phi, const FormField& omega);

/// Spectral norm of the form at x: coefficients converted to the
/// g-orthonormal coframe, then the comass norm.
double pointwise_norm(const FormField& omega, const Vector& x);

/// L^p norm by quadrature; p = infinity uses the sampled sup norm.
double lp_norm(const FormField& omega, double p, const QuadratureRule& rule,
               int sup_samples = 4096);

struct PointwiseBoundReport {
  double max_violation = -std::numeric_limits<double>::infinity();
  Vector worst_point;
  int violations_above_tol = 0;
  int points_checked = 0;
  double tolerance = 0.0;
};

/// Checks the pointwise pullback/pushforward inequalities at the sample
/// points: |phi^* eta| <= (alpha_1...alpha_k) |eta| o phi with eta the
/// pushforward of omega, and |phi_* omega| o phi <= (beta_1...beta_k o phi)
/// |omega|.  Violations are data, not errors.
PointwiseBoundReport verify_pointwise_bounds(const Diffeomorphism& phi,
                                             const FormField& omega,
                                             const std::vector<Vector>& points,
                                             double tolerance = 1e-8);

}  // namespace pushpull
