#pragma once

#include <stdexcept>

#include "clusterkit/dataset.hpp"
#include "clusterkit/rng.hpp"

namespace clusterkit {

/// Direction maximizing the mean squared projection of the dataset,
/// i.e. the dominant eigenvector of the uncentered second-moment matrix
/// M = (1/m) sum_i x_i x_i^T. No mean subtraction happens here.
struct PrincipalDirection {
  RowVec direction;        // unit norm; first nonzero coordinate positive
  double variance = 0.0;   // v^T M v
};

struct PowerIterationOptions {
  double tol = 1e-10;  // cosine distance between successive iterates
  int max_iter = 1000;
};

/// Thrown when power iteration runs out of iterations; carries the last
/// iterate so callers can inspect how far it got.
class PowerIterationError : public std::runtime_error {
 public:
  PowerIterationError(const std::string& what, RowVec last_iterate)
      : std::runtime_error(what), last_iterate(std::move(last_iterate)) {}

  RowVec last_iterate;
};

/// k distinct data points sampled without replacement (partial
/// Fisher-Yates over point indices). Deterministic given the seed.
Matrix init_random_points(const Dataset& data, int k, RngSeed seed);

/// Dominant eigenvector of the second-moment matrix via power iteration,
/// started from the normalized all-ones vector (no RNG involved).
/// Throws std::runtime_error on an all-zero dataset and
/// PowerIterationError when max_iter is exhausted.
PrincipalDirection principal_direction(const Dataset& data,
                                       const PowerIterationOptions& opts = {});

struct PcaPartitionInit {
  Matrix means;  // k x n
  /// True when all projections coincide and the result fell back to
  /// init_random_points with seed 0.
  bool degenerate_fallback = false;
};

/// Splits the value range of the principal components into k equal-width
/// intervals (last one closed on the right) and returns the centroid of each
/// interval's points. An empty interval receives the data point whose
/// projection is nearest the interval midpoint.
PcaPartitionInit init_pca_partition(const Dataset& data, int k);

}  // namespace clusterkit
