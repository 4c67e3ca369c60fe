#include "pushpull/quadrature.hpp"

#include <cmath>
#include <sstream>

namespace pushpull {

void gauss_legendre(int order, std::vector<double>& nodes, std::vector<double>& weights) {
  if (order < 1) throw ArgumentError("quadrature order must be >= 1");
  nodes.assign(order, 0.0);
  weights.assign(order, 0.0);
  const int half = (order + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Chebyshev-based initial guess, then Newton on P_order.
    double x = std::cos(M_PI * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      if (order == 1) p1 = x;
      for (int j = 2; j <= order; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      const double p = (order == 1) ? x : p1;
      const double pm1 = (order == 1) ? 1.0 : p0;
      dp = order * (x * p - pm1) / (x * x - 1.0);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[i] = -x;
    nodes[order - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    weights[i] = w;
    weights[order - 1 - i] = w;
  }
  if (order % 2 == 1) nodes[order / 2] = 0.0;
}

QuadratureRule quadrature_nodes(const ChartDomain& chart, int order) {
  if (order < 1) throw ArgumentError("quadrature order must be >= 1");
  const int n = chart.dim();

  std::vector<std::vector<double>> axis_nodes(n), axis_weights(n);
  std::vector<double> gl_nodes, gl_weights;
  bool gl_ready = false;
  for (int axis = 0; axis < n; ++axis) {
    const double lo = chart.lower[axis], hi = chart.upper[axis];
    auto& xs = axis_nodes[axis];
    auto& ws = axis_weights[axis];
    xs.resize(order);
    ws.resize(order);
    if (chart.periodic[axis]) {
      const double h = (hi - lo) / order;
      for (int i = 0; i < order; ++i) {
        xs[i] = lo + i * h;
        ws[i] = h;
      }
    } else {
      if (!gl_ready) {
        gauss_legendre(order, gl_nodes, gl_weights);
        gl_ready = true;
      }
      const double mid = 0.5 * (lo + hi), halfwidth = 0.5 * (hi - lo);
      for (int i = 0; i < order; ++i) {
        xs[i] = mid + halfwidth * gl_nodes[i];
        ws[i] = halfwidth * gl_weights[i];
      }
    }
  }

  QuadratureRule rule;
  rule.order = order;
  std::int64_t total = 1;
  for (int axis = 0; axis < n; ++axis) total *= order;
  rule.nodes.reserve(total);
  rule.weights.resize(total);

  std::vector<int> digit(n, 0);
  for (std::int64_t flat = 0; flat < total; ++flat) {
    Vector x(n);
    double w = 1.0;
    for (int axis = 0; axis < n; ++axis) {
      x[axis] = axis_nodes[axis][digit[axis]];
      w *= axis_weights[axis][digit[axis]];
    }
    rule.nodes.push_back(std::move(x));
    rule.weights[flat] = w;
    for (int axis = n - 1; axis >= 0; --axis) {
      if (++digit[axis] < order) break;
      digit[axis] = 0;
    }
  }
  return rule;
}

double integrate(const ChartDomain& chart, const ScalarField& f, const QuadratureRule& rule) {
  double sum = 0.0;
  for (size_t i = 0; i < rule.nodes.size(); ++i) {
    const Vector& x = rule.nodes[i];
    const double value = f(x);
    if (!std::isfinite(value)) {
      std::ostringstream out;
      out << "integrand is non-finite at node (";
      for (int j = 0; j < x.size(); ++j) out << (j ? ", " : "") << x[j];
      out << ")";
      throw NumericError(out.str());
    }
    sum += rule.weights[i] * value * volume_density(chart, x);
  }
  return sum;
}

namespace {

constexpr int kHaltonPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19};

double radical_inverse(int base, std::int64_t index) {
  double result = 0.0, digit_weight = 1.0 / base;
  while (index > 0) {
    result += (index % base) * digit_weight;
    index /= base;
    digit_weight /= base;
  }
  return result;
}

}  // namespace

std::vector<Vector> halton_points(const ChartDomain& chart, int count) {
  if (count < 0) throw ArgumentError("sample count must be nonnegative");
  const int n = chart.dim();
  if (n > 8) throw ArgumentError("halton_points supports dimensions up to 8");
  std::vector<Vector> points;
  points.reserve(count);
  for (int i = 0; i < count; ++i) {
    Vector x(n);
    for (int axis = 0; axis < n; ++axis) {
      const double u = radical_inverse(kHaltonPrimes[axis], i + 1);
      x[axis] = chart.lower[axis] + u * (chart.upper[axis] - chart.lower[axis]);
    }
    points.push_back(std::move(x));
  }
  return points;
}

double sup_norm_estimate(const ChartDomain& chart, const ScalarField& f, int samples,
                         const QuadratureRule* rule) {
  if (samples < 1) throw ArgumentError("sup-norm estimate needs at least one sample");
  auto check = [&](const Vector& x, double current) {
    const double value = std::abs(f(x));
    if (!std::isfinite(value)) {
      std::ostringstream out;
      out << "field is non-finite at (";
      for (int j = 0; j < x.size(); ++j) out << (j ? ", " : "") << x[j];
      out << ")";
      throw NumericError(out.str());
    }
    return std::max(current, value);
  };
  double result = 0.0;
  for (const Vector& x : halton_points(chart, samples)) result = check(x, result);
  if (rule) {
    for (const Vector& x : rule->nodes) result = check(x, result);
  }
  return result;
}

}  // namespace pushpull
