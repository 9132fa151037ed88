#pragma once

#include <Eigen/Core>

#include <stdexcept>
#include <string>
#include <vector>

namespace cluspath {

using Index = Eigen::Index;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Input data, one sample per column: d features by n samples.
struct DataMatrix {
  Matrix values;                           // d x n
  std::vector<std::string> feature_names;  // optional, size d when present

  Index d() const { return values.rows(); }
  Index n() const { return values.cols(); }
};

/// Validates shape, finiteness and label consistency.
/// Throws std::invalid_argument on violation.
DataMatrix make_data_matrix(Matrix values, std::vector<std::string> feature_names = {});

}  // namespace cluspath
