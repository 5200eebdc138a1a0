#include "swf/metrics.hpp"

#include <algorithm>
#include <stdexcept>

namespace swf {

double dist(const Vector& z, const Vector& x) {
  if (z.size() != x.size())
    throw std::invalid_argument("dist: vectors must have equal length");
  return std::min((z - x).norm(), (z + x).norm());
}

double nmse(const Vector& xhat, const Vector& x) {
  const double nx = x.norm();
  if (nx == 0.0) throw std::invalid_argument("nmse: ground truth must be nonzero");
  return dist(xhat, x) / nx;
}

bool classify_success(double nmse_value) { return nmse_value < 1e-5; }

}  // namespace swf
