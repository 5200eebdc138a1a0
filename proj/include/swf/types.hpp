#pragma once

#include <Eigen/Dense>

namespace swf {

// Measurement matrices are row-major: row i holds the sensing vector a_i,
// so streaming over measurements walks contiguous memory.
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;

inline constexpr const char* kVersion = "0.1.0";

}  // namespace swf
