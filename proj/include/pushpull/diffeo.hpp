#pragma once

#include <functional>

#include "pushpull/chart.hpp"
#include "pushpull/compound.hpp"

namespace pushpull {

using MapFn = std::function<Vector(const Vector&)>;
using JacobianFn = std::function<Matrix(const Vector&)>;

/// Orientation-preserving diffeomorphism between chart domains of the same
/// dimension.  The inverse map is supplied, never computed by root finding.
/// Forward/inverse closures are lifts to the covering space on periodic axes:
/// they must be smooth without wrapping, and results are wrapped on demand.
struct Diffeomorphism {
  ChartDomain source;
  ChartDomain target;
  MapFn forward;
  MapFn inverse;
  JacobianFn jacobian;  // analytic coordinate Jacobian; finite differences if absent
  double fd_step = 1e-5;

  Vector map_forward(const Vector& x) const { return target.wrap(forward(x)); }
  Vector map_inverse(const Vector& y) const { return source.wrap(inverse(y)); }

  /// View of the inverse diffeomorphism; the analytic Jacobian (when present)
  /// is carried over as D(phi^{-1})(y) = [Dphi(phi^{-1}(y))]^{-1}.
  Diffeomorphism inverted() const;
};

/// Coordinate Jacobian at x: analytic when supplied, otherwise central
/// differences with step fd_step.  Throws OrientationError if det <= 0.
Matrix jacobian_matrix(const Diffeomorphism& phi, const Vector& x);

/// Frame representation Phi = E_N(phi(x))^{-1} Dphi(x) E_M(x).
Matrix frame_matrix(const Diffeomorphism& phi, const Vector& x);

struct SingularSpectrum {
  Vector alphas;  // descending, strictly positive
  Vector point;   // where the spectrum was evaluated

  double product(int first, int last) const;  // alpha_first ... alpha_last, 1-based
  double top_product(int k) const { return product(1, k); }
};

/// Singular values of the diffeomorphism at x, all required > 1e-12.
SingularSpectrum singular_spectrum(const Diffeomorphism& phi, const Vector& x);

/// det(frame matrix) = product of the singular values.
double jacobian_determinant(const Diffeomorphism& phi, const Vector& x);

/// Singular spectrum of phi^{-1} at a target point y.
SingularSpectrum inverse_spectrum(const Diffeomorphism& phi, const Vector& y);

struct OracleInterval {
  double lower = 0.0;  // maximin over sampled subspaces (or exact for n = 2)
  double upper = 0.0;  // minimax over sampled subspaces (or exact for n = 2)
};

/// Minimax/maximin characterization of the i-th singular value, evaluated
/// without orthonormal frames: dense angle sweep for n = 2, sampled subspaces
/// with one-sided guarantees (lower <= alpha_i <= upper) for n = 3.
OracleInterval minimax_singular_interval(const Diffeomorphism& phi, const Vector& x,
                                         int i, int resolution = 10000);

/// Scalar form of the oracle: the sweep value for n = 2, the guaranteed
/// lower (maximin) sample for n = 3.  Throws NotImplementedError otherwise.
double minimax_singular_oracle(const Diffeomorphism& phi, const Vector& x, int i,
                               int resolution = 10000);

}  // namespace pushpull
