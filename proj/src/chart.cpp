#include "pushpull/chart.hpp"

#include <Eigen/Cholesky>
#include <cmath>
#include <sstream>

namespace pushpull {

namespace {

std::string point_string(const Vector& x) {
  std::ostringstream out;
  out << "(";
  for (int i = 0; i < x.size(); ++i) out << (i ? ", " : "") << x[i];
  out << ")";
  return out.str();
}

}  // namespace

ChartDomain::ChartDomain(Vector lower_, Vector upper_, std::vector<bool> periodic_,
                         MetricFn metric_)
    : lower(std::move(lower_)),
      upper(std::move(upper_)),
      periodic(std::move(periodic_)),
      metric(std::move(metric_)) {
  if (lower.size() != upper.size() || lower.size() == 0) {
    throw ShapeError("chart bounds must be nonempty and of equal length");
  }
  if (periodic.empty()) periodic.assign(lower.size(), false);
  if (periodic.size() != static_cast<size_t>(lower.size())) {
    throw ShapeError("periodic flags must match chart dimension");
  }
  for (int i = 0; i < lower.size(); ++i) {
    if (!(lower[i] < upper[i])) throw ArgumentError("chart box is empty on some axis");
  }
  if (!metric) throw ArgumentError("chart requires a metric field");
}

ChartDomain ChartDomain::euclidean_box(Vector lower, Vector upper,
                                       std::vector<bool> periodic) {
  const int n = static_cast<int>(lower.size());
  return ChartDomain(std::move(lower), std::move(upper), std::move(periodic),
                     [n](const Vector&) { return Matrix::Identity(n, n); });
}

double ChartDomain::coordinate_volume() const {
  double volume = 1.0;
  for (int i = 0; i < lower.size(); ++i) volume *= upper[i] - lower[i];
  return volume;
}

bool ChartDomain::contains(const Vector& x, double tol) const {
  if (x.size() != lower.size()) return false;
  for (int i = 0; i < x.size(); ++i) {
    if (periodic[i]) continue;  // wraps onto the axis regardless
    if (x[i] < lower[i] - tol || x[i] > upper[i] + tol) return false;
  }
  return true;
}

Vector ChartDomain::wrap(const Vector& x) const {
  Vector result = x;
  for (int i = 0; i < x.size(); ++i) {
    if (!periodic[i]) continue;
    const double len = period(i);
    result[i] = lower[i] + std::fmod(std::fmod(x[i] - lower[i], len) + len, len);
  }
  return result;
}

double ChartDomain::periodic_distance(const Vector& a, const Vector& b) const {
  double worst = 0.0;
  for (int i = 0; i < a.size(); ++i) {
    double d = std::abs(a[i] - b[i]);
    if (periodic[i]) {
      const double len = period(i);
      d = std::fmod(d, len);
      d = std::min(d, len - d);
    }
    worst = std::max(worst, d);
  }
  return worst;
}

Matrix ChartDomain::metric_at(const Vector& x) const {
  Matrix g = metric(wrap(x));
  if (g.rows() != dim() || g.cols() != dim()) {
    throw MetricError("metric has wrong shape at " + point_string(x));
  }
  if (!g.allFinite()) throw MetricError("metric is non-finite at " + point_string(x));
  if ((g - g.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
    throw MetricError("metric is not symmetric at " + point_string(x));
  }
  return g;
}

Matrix orthonormal_frame(const ChartDomain& chart, const Vector& x) {
  const Matrix g = chart.metric_at(x);
  Eigen::LLT<Matrix> llt(g);
  if (llt.info() != Eigen::Success) {
    throw MetricError("metric is not positive-definite at " + point_string(x));
  }
  // g = L L^T, so E = L^{-T} satisfies E^T g E = I with det E = 1/det L > 0.
  Matrix frame = llt.matrixU().solve(Matrix::Identity(chart.dim(), chart.dim()));
  if (frame.determinant() < 0.0) frame.col(0) = -frame.col(0);
  return frame;
}

double volume_density(const ChartDomain& chart, const Vector& x) {
  const Matrix g = chart.metric_at(x);
  Eigen::LLT<Matrix> llt(g);
  if (llt.info() != Eigen::Success) {
    throw MetricError("metric is not positive-definite at " + point_string(x));
  }
  const Matrix l = llt.matrixL();
  double det = 1.0;
  for (int i = 0; i < chart.dim(); ++i) det *= l(i, i);
  return det;  // sqrt(det g)
}

}  // namespace pushpull
