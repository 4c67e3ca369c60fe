#include "pushpull/alternating.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace pushpull {

AlternatingTensor::AlternatingTensor(int n_, int k_, Vector coeffs_)
    : n(n_), k(k_), coeffs(std::move(coeffs_)) {
  const auto expected = binomial(n, k);
  if (n < 1 || k < 0 || k > n) {
    throw DegreeRangeError("alternating tensor degree out of range");
  }
  if (coeffs.size() != expected) {
    throw ShapeError("coefficient vector has length " +
                     std::to_string(coeffs.size()) + ", expected " +
                     std::to_string(expected));
  }
  if (!coeffs.allFinite()) throw NumericError("non-finite tensor coefficient");
}

AlternatingTensor AlternatingTensor::zero(int n, int k) {
  return AlternatingTensor(n, k, Vector::Zero(binomial(n, k)));
}

AlternatingTensor AlternatingTensor::cobasis(int n, const std::vector<int>& index) {
  const int k = static_cast<int>(index.size());
  const auto& table = MultiIndexTable::cached(n, k);
  Vector coeffs = Vector::Zero(table.rank());
  coeffs[table.position(index)] = 1.0;
  return AlternatingTensor(n, k, std::move(coeffs));
}

AlternatingTensor operator+(const AlternatingTensor& a, const AlternatingTensor& b) {
  if (a.n != b.n || a.k != b.k) throw ShapeError("tensor degree/dimension mismatch");
  return AlternatingTensor(a.n, a.k, a.coeffs + b.coeffs);
}

AlternatingTensor operator*(double s, const AlternatingTensor& a) {
  return AlternatingTensor(a.n, a.k, s * a.coeffs);
}

namespace {

double minor_determinant(const Matrix& columns, const std::vector<int>& rows) {
  const int k = static_cast<int>(rows.size());
  switch (k) {
    case 0:
      return 1.0;
    case 1:
      return columns(rows[0] - 1, 0);
    case 2:
      return columns(rows[0] - 1, 0) * columns(rows[1] - 1, 1) -
             columns(rows[1] - 1, 0) * columns(rows[0] - 1, 1);
    default: {
      Matrix sub(k, k);
      for (int i = 0; i < k; ++i) sub.row(i) = columns.row(rows[i] - 1);
      return sub.determinant();
    }
  }
}

}  // namespace

double apply_to_vectors(const AlternatingTensor& a, const Matrix& vectors) {
  if (vectors.rows() != a.n || vectors.cols() != a.k) {
    throw ShapeError("argument block must be n x k");
  }
  const auto& table = MultiIndexTable::cached(a.n, a.k);
  double value = 0.0;
  for (int i = 0; i < table.rank(); ++i) {
    const double c = a.coeffs[i];
    if (c != 0.0) value += c * minor_determinant(vectors, table[i]);
  }
  return value;
}

double apply_to_vectors(const AlternatingTensor& a, const std::vector<Vector>& vectors) {
  if (static_cast<int>(vectors.size()) != a.k) {
    throw ShapeError("expected " + std::to_string(a.k) + " argument vectors");
  }
  Matrix block(a.n, a.k);
  for (int j = 0; j < a.k; ++j) {
    if (vectors[j].size() != a.n) throw ShapeError("argument vector has wrong dimension");
    block.col(j) = vectors[j];
  }
  return apply_to_vectors(a, block);
}

AlternatingTensor wedge(const AlternatingTensor& a, const AlternatingTensor& b) {
  if (a.n != b.n) throw ShapeError("wedge operands live in different dimensions");
  const int n = a.n;
  const int degree = a.k + b.k;
  if (degree > n) {
    throw DegreeRangeError("wedge degree " + std::to_string(degree) +
                           " exceeds dimension " + std::to_string(n));
  }
  const auto& out_table = MultiIndexTable::cached(n, degree);
  const auto& a_table = MultiIndexTable::cached(n, a.k);
  const auto& b_table = MultiIndexTable::cached(n, b.k);
  // Splits of each output tuple into an a-part and a b-part, by position.
  const auto& split_table = MultiIndexTable::cached(std::max(degree, 1), a.k);

  Vector coeffs = Vector::Zero(out_table.rank());
  std::vector<int> a_part(a.k), b_part(b.k), positions(degree);
  for (int out = 0; out < out_table.rank(); ++out) {
    const auto& tuple = out_table[out];
    double sum = 0.0;
    for (int s = 0; s < split_table.rank(); ++s) {
      const auto& sel = split_table[s];
      if (degree > 0 && !sel.empty() && sel.back() > degree) continue;
      int ai = 0, bi = 0, si = 0;
      for (int pos = 1; pos <= degree; ++pos) {
        const bool in_a = si < a.k && sel[si] == pos;
        if (in_a) {
          positions[ai + 0] = pos;
          a_part[ai++] = tuple[pos - 1];
          ++si;
        } else {
          positions[a.k + bi] = pos;
          b_part[bi++] = tuple[pos - 1];
        }
      }
      const int sign = permutation_sign(positions);
      sum += sign * a.coeffs[a_table.position(a_part)] * b.coeffs[b_table.position(b_part)];
    }
    coeffs[out] = sum;
  }
  return AlternatingTensor(n, degree, std::move(coeffs));
}

AlternatingTensor hodge_star(const AlternatingTensor& a) {
  const int n = a.n;
  const auto& table = MultiIndexTable::cached(n, a.k);
  const auto& dual_table = MultiIndexTable::cached(n, n - a.k);
  Vector coeffs = Vector::Zero(dual_table.rank());
  for (int i = 0; i < table.rank(); ++i) {
    const auto& index = table[i];
    auto comp = complement_tuple(index, n);
    std::vector<int> joined = index;
    joined.insert(joined.end(), comp.begin(), comp.end());
    const int sign = permutation_sign(std::move(joined));
    coeffs[dual_table.position(comp)] = sign * a.coeffs[i];
  }
  return AlternatingTensor(n, n - a.k, std::move(coeffs));
}

namespace {

// One pass of coordinate maximization: with all slots but j fixed, the map
// v -> A(X_1,..,v,..,X_k) is linear, so the best unit vector is its dual.
double alternating_max_pass(const AlternatingTensor& a, Matrix& slots) {
  const int n = a.n;
  double value = 0.0;
  Vector functional(n);
  Matrix work = slots;
  for (int j = 0; j < a.k; ++j) {
    for (int i = 0; i < n; ++i) {
      work.col(j) = Vector::Unit(n, i);
      functional[i] = apply_to_vectors(a, work);
      work.col(j) = slots.col(j);
    }
    const double norm = functional.norm();
    if (norm > 0.0) {
      slots.col(j) = functional / norm;
      work.col(j) = slots.col(j);
      value = norm;
    } else {
      value = std::abs(apply_to_vectors(a, slots));
    }
  }
  return value;
}

double alternating_maximize(const AlternatingTensor& a, Matrix slots,
                            const ComassOptions& options) {
  double best = std::abs(apply_to_vectors(a, slots));
  for (int iter = 0; iter < options.max_iterations; ++iter) {
    const double value = alternating_max_pass(a, slots);
    if (value <= best * (1.0 + options.tolerance)) {
      best = std::max(best, value);
      break;
    }
    best = value;
  }
  return best;
}

}  // namespace

double comass_norm(const AlternatingTensor& a, const ComassOptions& options) {
  if (a.k == 0) return std::abs(a.coeffs[0]);
  if (a.k == 1 || a.k == a.n - 1 || a.k == a.n) {
    // Every k-vector is decomposable at these degrees, so the comass equals
    // the Euclidean coefficient norm.
    return a.coeffs.norm();
  }
  const double scale = a.coeffs.norm();
  if (scale == 0.0) return 0.0;

  const auto& table = MultiIndexTable::cached(a.n, a.k);
  int top = 0;
  for (int i = 1; i < table.rank(); ++i) {
    if (std::abs(a.coeffs[i]) > std::abs(a.coeffs[top])) top = i;
  }
  // Deterministic start at the dominant cobasis tuple keeps the result at or
  // above the largest single coefficient.
  Matrix start(a.n, a.k);
  for (int j = 0; j < a.k; ++j) start.col(j) = Vector::Unit(a.n, table[top][j] - 1);
  double best = alternating_maximize(a, start, options);

  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int r = 0; r < options.restarts; ++r) {
    Matrix slots(a.n, a.k);
    for (int j = 0; j < a.k; ++j) {
      Vector v(a.n);
      do {
        for (int i = 0; i < a.n; ++i) v[i] = gauss(rng);
      } while (v.norm() < 1e-12);
      slots.col(j) = v / v.norm();
    }
    best = std::max(best, alternating_maximize(a, slots, options));
  }
  // The comass never exceeds the Euclidean coefficient norm; clamp roundoff.
  return std::min(best, scale);
}

}  // namespace pushpull
