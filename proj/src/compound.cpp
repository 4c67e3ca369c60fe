#include "pushpull/compound.hpp"

#include <Eigen/SVD>
#include <algorithm>

namespace pushpull {

namespace {

double block_minor(const Matrix& phi, const std::vector<int>& rows,
                   const std::vector<int>& cols) {
  const int k = static_cast<int>(rows.size());
  switch (k) {
    case 0:
      return 1.0;
    case 1:
      return phi(rows[0] - 1, cols[0] - 1);
    case 2:
      return phi(rows[0] - 1, cols[0] - 1) * phi(rows[1] - 1, cols[1] - 1) -
             phi(rows[0] - 1, cols[1] - 1) * phi(rows[1] - 1, cols[0] - 1);
    default: {
      Matrix sub(k, k);
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) sub(i, j) = phi(rows[i] - 1, cols[j] - 1);
      return sub.determinant();
    }
  }
}

}  // namespace

Matrix compound(const Matrix& phi, int k) {
  if (phi.rows() != phi.cols()) throw ShapeError("compound requires a square matrix");
  const int n = static_cast<int>(phi.rows());
  if (k < 0 || k > n) throw DegreeRangeError("compound degree out of range");
  const auto& table = MultiIndexTable::cached(std::max(n, 1), k);
  const int rank = (n == 0) ? 1 : table.rank();
  Matrix result(rank, rank);
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j) result(i, j) = block_minor(phi, table[i], table[j]);
  return result;
}

Vector singular_values(const Matrix& m) {
  if (!m.allFinite()) throw NumericError("singular_values: non-finite entry");
  Eigen::JacobiSVD<Matrix> svd(m);
  Vector values = svd.singularValues();
  for (int i = 0; i < values.size(); ++i) values[i] = std::max(values[i], 0.0);
  // Eigen returns descending order already; keep the contract explicit.
  std::sort(values.data(), values.data() + values.size(), std::greater<double>());
  return values;
}

}  // namespace pushpull
