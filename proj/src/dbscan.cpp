#include "clusterkit/dbscan.hpp"

#include <deque>
#include <stdexcept>

namespace clusterkit {

namespace {

void check_config(const DbscanConfig& config) {
  if (!(config.eps > 0.0)) {
    throw std::invalid_argument("dbscan: eps must be positive");
  }
  if (config.min_near < 1) {
    throw std::invalid_argument("dbscan: min_near must be at least 1");
  }
}

}  // namespace

std::vector<Eigen::Index> region_query(const Dataset& data, Eigen::Index i,
                                       double eps) {
  if (i < 0 || i >= data.size()) {
    throw std::invalid_argument("region_query: point index out of range");
  }
  if (!(eps > 0.0)) {
    throw std::invalid_argument("region_query: eps must be positive");
  }
  const double eps2 = eps * eps;
  std::vector<Eigen::Index> out;
  for (Eigen::Index j = 0; j < data.size(); ++j) {
    if ((data.point(i) - data.point(j)).squaredNorm() <= eps2) {
      out.push_back(j);
    }
  }
  return out;
}

DbscanLabels dbscan(const Dataset& data, const DbscanConfig& config) {
  check_config(config);
  const Eigen::Index m = data.size();

  DbscanLabels out;
  out.core.resize(static_cast<std::size_t>(m));
  std::vector<std::vector<Eigen::Index>> neighbors(
      static_cast<std::size_t>(m));
  for (Eigen::Index i = 0; i < m; ++i) {
    neighbors[static_cast<std::size_t>(i)] = region_query(data, i, config.eps);
    out.core[static_cast<std::size_t>(i)] =
        static_cast<int>(neighbors[static_cast<std::size_t>(i)].size()) >=
        config.min_near;
  }

  constexpr int kUnassigned = -2;
  out.labels.assign(static_cast<std::size_t>(m), kUnassigned);

  int next_cluster = 0;
  std::deque<Eigen::Index> queue;
  for (Eigen::Index i = 0; i < m; ++i) {
    if (out.labels[static_cast<std::size_t>(i)] != kUnassigned ||
        !out.core[static_cast<std::size_t>(i)]) {
      continue;
    }
    const int cluster = next_cluster++;
    out.labels[static_cast<std::size_t>(i)] = cluster;
    queue.assign(1, i);
    while (!queue.empty()) {
      const Eigen::Index j = queue.front();
      queue.pop_front();
      if (!out.core[static_cast<std::size_t>(j)]) continue;  // border point
      for (Eigen::Index q : neighbors[static_cast<std::size_t>(j)]) {
        if (out.labels[static_cast<std::size_t>(q)] == kUnassigned) {
          out.labels[static_cast<std::size_t>(q)] = cluster;
          queue.push_back(q);
        }
      }
    }
  }

  for (auto& label : out.labels) {
    if (label == kUnassigned) label = DbscanLabels::kNoise;
  }
  out.n_clusters = next_cluster;
  return out;
}

}  // namespace clusterkit
