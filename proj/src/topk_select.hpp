#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

namespace swf::detail {

// Indices of the k largest keys, ties broken by lowest index, returned
// sorted ascending. NaN keys rank below everything.
inline std::vector<int> top_k_by_key(const double* keys, int n, int k) {
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  auto rank = [&](int i) {
    const double v = keys[i];
    return std::isnan(v) ? -std::numeric_limits<double>::infinity() : v;
  };
  auto before = [&](int a, int b) {
    const double ra = rank(a), rb = rank(b);
    if (ra != rb) return ra > rb;
    return a < b;
  };
  if (k < n) std::nth_element(idx.begin(), idx.begin() + (k - 1), idx.end(), before);
  idx.resize(k);
  std::sort(idx.begin(), idx.end());
  return idx;
}

}  // namespace swf::detail
