#pragma once

#include <cstdint>
#include <vector>

#include "clusterkit/dataset.hpp"

namespace clusterkit::oracle {

/// Exhaustive-search results. Deliberately dumb code paths: everything here
/// recomputes its own sums and distances so it stays an independent check
/// on the iterative implementations. Depends on core types only.
struct BruteForceKmeansResult {
  double optimal_error = 0.0;
  std::vector<int> optimal_assignments;  // lexicographically smallest optimum
  std::uint64_t candidates_evaluated = 0;
};

/// Enumerates all k^m assignment vectors, scores each with per-cluster
/// centroids as means, and returns the global minimum of the clustering
/// error. Refuses instances with k^m > 2e6.
BruteForceKmeansResult brute_force_kmeans(const Dataset& data, int k);

struct ConnectivityPartition {
  std::vector<int> labels;  // 0-based component id, or -1 for noise
  std::vector<bool> core;
  int n_clusters = 0;
};

/// Reference density clustering: core flags by all-pairs counting, connected
/// components of the core-core eps-graph by traversal, border points
/// attached to the lowest-id adjacent component.
ConnectivityPartition connectivity_components(const Dataset& data, double eps,
                                              int min_near);

}  // namespace clusterkit::oracle
