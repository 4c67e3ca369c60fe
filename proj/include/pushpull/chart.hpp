#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "pushpull/errors.hpp"

namespace pushpull {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

using MetricFn = std::function<Matrix(const Vector&)>;

/// Single oriented coordinate chart: a box with optional periodic axes and a
/// symmetric positive-definite metric field.  Orientation is the coordinate
/// order.  Immutable after construction; the metric closure must be pure.
struct ChartDomain {
  Vector lower;
  Vector upper;
  std::vector<bool> periodic;
  MetricFn metric;

  ChartDomain() = default;
  ChartDomain(Vector lower_, Vector upper_, std::vector<bool> periodic_, MetricFn metric_);

  static ChartDomain euclidean_box(Vector lower, Vector upper,
                                   std::vector<bool> periodic = {});

  int dim() const { return static_cast<int>(lower.size()); }
  double period(int axis) const { return upper[axis] - lower[axis]; }
  double coordinate_volume() const;

  bool contains(const Vector& x, double tol = 1e-9) const;
  /// Reduce periodic coordinates into [lower, upper); clamps nothing else.
  Vector wrap(const Vector& x) const;
  /// Componentwise distance respecting periodic identification.
  double periodic_distance(const Vector& a, const Vector& b) const;

  /// Metric evaluated at x, validated symmetric to 1e-12 and SPD.
  Matrix metric_at(const Vector& x) const;
};

/// Columns form a positively-oriented g-orthonormal basis at x: E^T g E = I,
/// det E > 0.  Cholesky-based, deterministic.
Matrix orthonormal_frame(const ChartDomain& chart, const Vector& x);

/// Riemannian volume density sqrt(det g(x)); equals 1/det(orthonormal_frame).
double volume_density(const ChartDomain& chart, const Vector& x);

}  // namespace pushpull
