#pragma once

#include <cstdint>
#include <vector>

#include "pushpull/errors.hpp"

namespace pushpull {

std::int64_t binomial(int n, int k);

/// Strictly increasing k-tuples from {1..n}, enumerated in lexicographic
/// order.  This ordering is fixed once and shared by every component that
/// indexes alternating tensors or compound matrices.
class MultiIndexTable {
 public:
  MultiIndexTable(int n, int k);

  int dim() const { return n_; }
  int degree() const { return k_; }
  int rank() const { return static_cast<int>(indices_.size()); }

  const std::vector<int>& operator[](int i) const { return indices_[i]; }
  const std::vector<std::vector<int>>& tuples() const { return indices_; }

  /// Position of a strictly increasing tuple; throws on malformed input.
  int position(const std::vector<int>& tuple) const;

  /// Process-wide cache; tables are immutable so sharing is safe.
  static const MultiIndexTable& cached(int n, int k);

 private:
  int n_, k_;
  std::vector<std::vector<int>> indices_;
};

MultiIndexTable lex_multi_indices(int n, int k);

/// Sign of the permutation sorting `perm` ascending; 0 if entries repeat.
int permutation_sign(std::vector<int> perm);

/// Ascending complement of tuple I in {1..n}.
std::vector<int> complement_tuple(const std::vector<int>& index, int n);

}  // namespace pushpull
