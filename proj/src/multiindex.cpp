#include "pushpull/multiindex.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <utility>

namespace pushpull {

std::int64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::int64_t result = 1;
  for (int i = 1; i <= k; ++i) {
    result = result * (n - k + i) / i;
  }
  return result;
}

MultiIndexTable::MultiIndexTable(int n, int k) : n_(n), k_(k) {
  if (n < 1) throw ArgumentError("multi-index dimension must be >= 1");
  if (k < 0 || k > n) {
    throw DegreeRangeError("degree " + std::to_string(k) +
                           " out of range for dimension " + std::to_string(n));
  }
  indices_.reserve(static_cast<size_t>(binomial(n, k)));
  std::vector<int> tuple(k);
  for (int i = 0; i < k; ++i) tuple[i] = i + 1;
  if (k == 0) {
    indices_.push_back({});
    return;
  }
  while (true) {
    indices_.push_back(tuple);
    int i = k - 1;
    while (i >= 0 && tuple[i] == n - k + i + 1) --i;
    if (i < 0) break;
    ++tuple[i];
    for (int j = i + 1; j < k; ++j) tuple[j] = tuple[j - 1] + 1;
  }
}

int MultiIndexTable::position(const std::vector<int>& tuple) const {
  if (static_cast<int>(tuple.size()) != k_) {
    throw ShapeError("multi-index tuple has wrong length");
  }
  auto it = std::lower_bound(indices_.begin(), indices_.end(), tuple);
  if (it == indices_.end() || *it != tuple) {
    throw ArgumentError("tuple is not a strictly increasing multi-index");
  }
  return static_cast<int>(it - indices_.begin());
}

const MultiIndexTable& MultiIndexTable::cached(int n, int k) {
  static std::map<std::pair<int, int>, MultiIndexTable> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  auto key = std::make_pair(n, k);
  auto it = cache.find(key);
  if (it == cache.end()) {
    it = cache.emplace(key, MultiIndexTable(n, k)).first;
  }
  return it->second;
}

MultiIndexTable lex_multi_indices(int n, int k) { return MultiIndexTable(n, k); }

int permutation_sign(std::vector<int> perm) {
  int sign = 1;
  const int m = static_cast<int>(perm.size());
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      if (perm[i] == perm[j]) return 0;
      if (perm[i] > perm[j]) sign = -sign;
    }
  }
  return sign;
}

std::vector<int> complement_tuple(const std::vector<int>& index, int n) {
  std::vector<int> comp;
  comp.reserve(n - index.size());
  size_t pos = 0;
  for (int v = 1; v <= n; ++v) {
    if (pos < index.size() && index[pos] == v) {
      ++pos;
    } else {
      comp.push_back(v);
    }
  }
  return comp;
}

}  // namespace pushpull
