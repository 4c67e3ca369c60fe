#pragma once

#include <functional>
#include <vector>

#include "pushpull/chart.hpp"

namespace pushpull {

using ScalarField = std::function<double(const Vector&)>;

struct QuadratureRule {
  std::vector<Vector> nodes;
  Vector weights;
  int order = 0;
};

/// Gauss-Legendre nodes/weights on [-1, 1].
void gauss_legendre(int order, std::vector<double>& nodes, std::vector<double>& weights);

/// Tensor-product rule: Gauss-Legendre per non-periodic axis, uniform per
/// periodic axis, `order` points per axis either way.
QuadratureRule quadrature_nodes(const ChartDomain& chart, int order);

/// Riemannian integral: sum of w_i f(x_i) sqrt(det g(x_i)).
double integrate(const ChartDomain& chart, const ScalarField& f, const QuadratureRule& rule);

/// Deterministic low-discrepancy (Halton) points inside the box.  Prefixes of
/// a longer sequence reproduce shorter ones.
std::vector<Vector> halton_points(const ChartDomain& chart, int count);

/// max |f| over `samples` Halton points plus the nodes of `rule` when given.
double sup_norm_estimate(const ChartDomain& chart, const ScalarField& f, int samples,
                         const QuadratureRule* rule = nullptr);

}  // namespace pushpull
