#pragma once

#include <Eigen/Dense>

#include "pushpull/multiindex.hpp"

namespace pushpull {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// k-th compound (induced operator) of a square matrix: entry (I, J) is the
/// k x k minor det(phi[I, J]) over lexicographic multi-index tables.
Matrix compound(const Matrix& phi, int k);

/// Singular values sorted descending, clamped at zero.
Vector singular_values(const Matrix& m);

}  // namespace pushpull
