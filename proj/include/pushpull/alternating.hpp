#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "pushpull/multiindex.hpp"

namespace pushpull {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Alternating k-linear form on R^n, stored as the coefficient vector over
/// the lexicographic cobasis e^I of an orthonormal frame:
/// coeffs[I] = A(e_{i1}, ..., e_{ik}).
struct AlternatingTensor {
  int n = 0;
  int k = 0;
  Vector coeffs;

  AlternatingTensor() = default;
  AlternatingTensor(int n_, int k_, Vector coeffs_);

  /// Zero tensor of the given degree.
  static AlternatingTensor zero(int n, int k);
  /// Cobasis element e^I with coefficient 1.
  static AlternatingTensor cobasis(int n, const std::vector<int>& index);

  double euclidean_norm() const { return coeffs.norm(); }
};

AlternatingTensor operator+(const AlternatingTensor& a, const AlternatingTensor& b);
AlternatingTensor operator*(double s, const AlternatingTensor& a);

/// Antisymmetric multilinear evaluation A(X_1, ..., X_k); columns of `vectors`
/// are the arguments.
double apply_to_vectors(const AlternatingTensor& a, const Matrix& vectors);
double apply_to_vectors(const AlternatingTensor& a, const std::vector<Vector>& vectors);

/// Exterior product, shuffle convention: (e^1 ^ e^2)(e_1, e_2) = 1.
AlternatingTensor wedge(const AlternatingTensor& a, const AlternatingTensor& b);

/// Hodge dual with the permutation-sign convention star(e^I) = sgn(I, I^c) e^{I^c};
/// an isometry on coefficients with star(mu) = 1.
AlternatingTensor hodge_star(const AlternatingTensor& a);

struct ComassOptions {
  int restarts = 16;
  int max_iterations = 200;
  double tolerance = 1e-10;        // relative improvement cutoff
  std::uint64_t seed = 0x5eed5eedULL;
};

/// Spectral (comass) norm: max of |A(X_1,...,X_k)| over unit vectors.
/// Exact closed form (Euclidean coefficient norm) for k in {0, 1, n-1, n};
/// alternating maximization with random restarts otherwise.
double comass_norm(const AlternatingTensor& a, const ComassOptions& options = {});

}  // namespace pushpull
