#include "swf/support.hpp"

#include <stdexcept>

#include "topk_select.hpp"

namespace swf {

SupportScores support_scores(const Matrix& A, const Vector& y) {
  const int m = static_cast<int>(A.rows());
  const int n = static_cast<int>(A.cols());
  if (m == 0) throw std::invalid_argument("support_scores: no measurements");
  if (y.size() != m)
    throw std::invalid_argument("support_scores: y length must equal row count of A");
  SupportScores s;
  s.m_used = m;
  s.scores = Vector::Zero(n);
  // scores += y_i * (a_i squared elementwise), one contiguous row at a time
  for (int i = 0; i < m; ++i)
    s.scores.array() += y[i] * A.row(i).array().square().transpose();
  s.scores /= static_cast<double>(m);
  return s;
}

std::vector<int> top_k_indices(const SupportScores& s, int k) {
  const int n = static_cast<int>(s.scores.size());
  if (k < 1 || k > n) throw std::invalid_argument("top_k_indices: need 1 <= k <= n");
  return detail::top_k_by_key(s.scores.data(), n, k);
}

}  // namespace swf
