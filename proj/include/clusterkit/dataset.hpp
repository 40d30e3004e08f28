#pragma once

#include <Eigen/Core>
#include <stdexcept>
#include <vector>

namespace clusterkit {

/// Points are rows: an m x n matrix holds m feature vectors of dimension n.
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                             Eigen::RowMajor>;
using RowVec = Eigen::RowVectorXd;

/// Ordered collection of m feature vectors in R^n, one per row.
///
/// Invariants enforced at construction: m >= 1, n >= 1, every coordinate
/// finite. Algorithm kernels rely on these and do not re-validate.
/// Immutable after construction and safe to share across threads.
class Dataset {
 public:
  explicit Dataset(Matrix points);

  /// Convenience constructor from nested initializer-style data.
  static Dataset from_rows(const std::vector<std::vector<double>>& rows);

  Eigen::Index size() const { return points_.rows(); }  // m
  Eigen::Index dim() const { return points_.cols(); }   // n
  const Matrix& points() const { return points_; }
  auto point(Eigen::Index i) const { return points_.row(i); }

 private:
  Matrix points_;
};

/// Sum of squared coordinate differences. Throws std::invalid_argument on
/// dimension mismatch.
double squared_euclidean_distance(const RowVec& a, const RowVec& b);

}  // namespace clusterkit
