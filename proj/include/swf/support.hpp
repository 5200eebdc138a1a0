#pragma once

#include <vector>

#include "swf/types.hpp"

namespace swf {

/// Per-coordinate support statistic E_j = (1/m) sum_i y_i a_{i,j}^2.
struct SupportScores {
  Vector scores;
  int m_used = 0;
};

SupportScores support_scores(const Matrix& A, const Vector& y);

/// Indices of the k largest scores, sorted ascending. Ties break toward
/// the lowest index.
std::vector<int> top_k_indices(const SupportScores& s, int k);

}  // namespace swf
