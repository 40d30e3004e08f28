#include "clusterkit/dataset.hpp"

namespace clusterkit {

Dataset::Dataset(Matrix points) : points_(std::move(points)) {
  if (points_.rows() < 1 || points_.cols() < 1) {
    throw std::invalid_argument(
        "Dataset: need at least one point of dimension >= 1");
  }
  if (!points_.allFinite()) {
    throw std::invalid_argument("Dataset: coordinates must be finite");
  }
}

Dataset Dataset::from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) {
    throw std::invalid_argument("Dataset: need at least one point");
  }
  const auto n = rows.front().size();
  Matrix pts(static_cast<Eigen::Index>(rows.size()),
             static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != n) {
      throw std::invalid_argument(
          "Dataset: all points must have identical dimension");
    }
    for (std::size_t j = 0; j < n; ++j) {
      pts(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          rows[i][j];
    }
  }
  return Dataset(std::move(pts));
}

double squared_euclidean_distance(const RowVec& a, const RowVec& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument(
        "squared_euclidean_distance: dimension mismatch");
  }
  return (a - b).squaredNorm();
}

}  // namespace clusterkit
