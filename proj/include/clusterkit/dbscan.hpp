#pragma once

#include <vector>

#include "clusterkit/dataset.hpp"

namespace clusterkit {

/// Density parameters: eps is the maximum Euclidean distance for two points
/// to count as nearby (closed ball), min_near the neighborhood size
/// (including the point itself) that makes a point a core point.
struct DbscanConfig {
  double eps = 0.0;
  int min_near = 0;
};

/// Per-point labels: a 0-based cluster id or kNoise. Serialized output uses
/// 1-based ids with the literal "noise".
struct DbscanLabels {
  static constexpr int kNoise = -1;

  std::vector<int> labels;
  std::vector<bool> core;
  int n_clusters = 0;
};

/// Indices j (including i itself) with ||x_i - x_j|| <= eps, ascending.
std::vector<Eigen::Index> region_query(const Dataset& data, Eigen::Index i,
                                       double eps);

/// Connectivity clustering: clusters are the connected components of the
/// eps-graph over core points plus every non-core point within eps of a
/// core point. Border points join the first cluster whose expansion reaches
/// them; the scan runs in ascending point order, so the result is
/// deterministic. Points reached by no cluster are noise.
DbscanLabels dbscan(const Dataset& data, const DbscanConfig& config);

}  // namespace clusterkit
