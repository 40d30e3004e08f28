#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "clusterkit/dataset.hpp"
#include "clusterkit/rng.hpp"

namespace clusterkit {

enum class InitStrategy { kRandomPoints, kPcaPartition };

struct KmeansOptions {
  int max_iter = 300;
  /// Optional relative-decrease stopping threshold on the clustering error.
  /// Off by default; the assignment fixed point always terminates the loop
  /// regardless.
  std::optional<double> rel_tol;
};

/// Result of a hard-clustering run.
///
/// Cluster indices are 0-based here; serialized output is 1-based.
/// Clusters that lose all their points are deactivated permanently: they
/// keep their last mean, receive no further assignments, and `active` is
/// false for them.
struct HardClustering {
  std::vector<int> assignments;           // one 0-based cluster index per point
  Matrix means;                           // k x n
  std::vector<bool> active;               // k activity indicators
  std::vector<double> error_trajectory;   // one entry per completed iteration
  int iterations = 0;
  bool converged = false;

  double final_error() const { return error_trajectory.back(); }
};

/// Assigns every point to its nearest mean by squared Euclidean distance.
/// Exact comparison; ties go to the lowest cluster index.
std::vector<int> assign_clusters(const Dataset& data, const Matrix& means);

/// Per-cluster centroids of the assigned points. Clusters with no points
/// come back inactive with a zeroed mean row; callers keep the previous
/// mean for those.
std::pair<Matrix, std::vector<bool>> update_means(
    const Dataset& data, const std::vector<int>& assignments, int k);

/// Mean squared distance of every point to its assigned cluster mean.
double clustering_error(const Dataset& data, const Matrix& means,
                        const std::vector<int>& assignments);

/// Iterates assignment / activity / mean updates until the assignments stop
/// changing (or max_iter). `converged` is false when the iteration guard
/// fires first.
HardClustering kmeans_fixed_point(const Dataset& data, Matrix initial_means,
                                  const KmeansOptions& opts = {});

/// Runs kmeans_fixed_point once per restart with sub-seeds derived from
/// (seed, restart index) and returns the run with the smallest final error.
/// Ties go to the lowest restart index, so the result is deterministic.
HardClustering kmeans_multi_restart(const Dataset& data, int k, int restarts,
                                    InitStrategy init, RngSeed seed,
                                    const KmeansOptions& opts = {});

}  // namespace clusterkit
