#include "clusterkit/oracle.hpp"

#include <deque>
#include <stdexcept>

namespace clusterkit::oracle {

namespace {

double squared_distance_plain(const Dataset& data, Eigen::Index i,
                              Eigen::Index j) {
  double sum = 0.0;
  for (Eigen::Index d = 0; d < data.dim(); ++d) {
    const double diff = data.points()(i, d) - data.points()(j, d);
    sum += diff * diff;
  }
  return sum;
}

}  // namespace

BruteForceKmeansResult brute_force_kmeans(const Dataset& data, int k) {
  if (k < 1) {
    throw std::invalid_argument("brute_force_kmeans: k must be at least 1");
  }
  const Eigen::Index m = data.size();
  const Eigen::Index n = data.dim();

  std::uint64_t total = 1;
  for (Eigen::Index i = 0; i < m; ++i) {
    total *= static_cast<std::uint64_t>(k);
    if (total > 2'000'000ull) {
      throw std::invalid_argument(
          "brute_force_kmeans: instance too large (k^m exceeds 2e6)");
    }
  }

  BruteForceKmeansResult best;
  std::vector<int> assignment(static_cast<std::size_t>(m), 0);
  std::vector<double> sums(static_cast<std::size_t>(k * n));
  std::vector<int> counts(static_cast<std::size_t>(k));
  bool first = true;

  for (;;) {
    ++best.candidates_evaluated;

    // Per-cluster centroids for this assignment, then the mean squared
    // distance of every point to its centroid.
    std::fill(sums.begin(), sums.end(), 0.0);
    std::fill(counts.begin(), counts.end(), 0);
    for (Eigen::Index i = 0; i < m; ++i) {
      const int c = assignment[static_cast<std::size_t>(i)];
      ++counts[static_cast<std::size_t>(c)];
      for (Eigen::Index d = 0; d < n; ++d) {
        sums[static_cast<std::size_t>(c * n + d)] += data.points()(i, d);
      }
    }
    double error = 0.0;
    for (Eigen::Index i = 0; i < m; ++i) {
      const int c = assignment[static_cast<std::size_t>(i)];
      for (Eigen::Index d = 0; d < n; ++d) {
        const double mean =
            sums[static_cast<std::size_t>(c * n + d)] /
            counts[static_cast<std::size_t>(c)];
        const double diff = data.points()(i, d) - mean;
        error += diff * diff;
      }
    }
    error /= static_cast<double>(m);

    // Strict '<' plus lexicographic enumeration order keeps the
    // lexicographically smallest optimal assignment.
    if (first || error < best.optimal_error) {
      first = false;
      best.optimal_error = error;
      best.optimal_assignments = assignment;
    }

    // Odometer increment, rightmost digit fastest.
    Eigen::Index pos = m - 1;
    while (pos >= 0 && assignment[static_cast<std::size_t>(pos)] == k - 1) {
      assignment[static_cast<std::size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) break;
    ++assignment[static_cast<std::size_t>(pos)];
  }
  return best;
}

ConnectivityPartition connectivity_components(const Dataset& data, double eps,
                                              int min_near) {
  if (!(eps > 0.0) || min_near < 1) {
    throw std::invalid_argument(
        "connectivity_components: eps must be positive, min_near >= 1");
  }
  const Eigen::Index m = data.size();
  if (m > 1000) {
    throw std::invalid_argument(
        "connectivity_components: instance too large (m > 1000)");
  }
  const double eps2 = eps * eps;

  std::vector<std::vector<Eigen::Index>> adjacent(
      static_cast<std::size_t>(m));
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      if (squared_distance_plain(data, i, j) <= eps2) {
        adjacent[static_cast<std::size_t>(i)].push_back(j);
      }
    }
  }

  ConnectivityPartition out;
  out.core.resize(static_cast<std::size_t>(m));
  for (Eigen::Index i = 0; i < m; ++i) {
    out.core[static_cast<std::size_t>(i)] =
        static_cast<int>(adjacent[static_cast<std::size_t>(i)].size()) >=
        min_near;
  }

  // Connected components of the eps-graph restricted to core points,
  // numbered in order of their lowest core index.
  out.labels.assign(static_cast<std::size_t>(m), -1);
  int next_component = 0;
  std::deque<Eigen::Index> queue;
  for (Eigen::Index i = 0; i < m; ++i) {
    if (!out.core[static_cast<std::size_t>(i)] ||
        out.labels[static_cast<std::size_t>(i)] != -1) {
      continue;
    }
    const int component = next_component++;
    out.labels[static_cast<std::size_t>(i)] = component;
    queue.assign(1, i);
    while (!queue.empty()) {
      const Eigen::Index j = queue.front();
      queue.pop_front();
      for (Eigen::Index q : adjacent[static_cast<std::size_t>(j)]) {
        if (out.core[static_cast<std::size_t>(q)] &&
            out.labels[static_cast<std::size_t>(q)] == -1) {
          out.labels[static_cast<std::size_t>(q)] = component;
          queue.push_back(q);
        }
      }
    }
  }
  out.n_clusters = next_component;

  // Border points: non-core with at least one adjacent core point; they
  // take the lowest component id among their core neighbors.
  for (Eigen::Index i = 0; i < m; ++i) {
    if (out.core[static_cast<std::size_t>(i)]) continue;
    int lowest = -1;
    for (Eigen::Index q : adjacent[static_cast<std::size_t>(i)]) {
      if (!out.core[static_cast<std::size_t>(q)]) continue;
      const int id = out.labels[static_cast<std::size_t>(q)];
      if (lowest == -1 || id < lowest) lowest = id;
    }
    out.labels[static_cast<std::size_t>(i)] = lowest;  // stays -1 for noise
  }
  return out;
}

}  // namespace clusterkit::oracle
