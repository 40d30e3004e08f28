#include "clusterkit/kmeans.hpp"

#include <limits>
#include <string>

#include "clusterkit/init.hpp"

namespace clusterkit {

namespace {

void check_means(const Dataset& data, const Matrix& means) {
  if (means.rows() < 1) {
    throw std::invalid_argument("kmeans: need at least one cluster mean");
  }
  if (means.cols() != data.dim()) {
    throw std::invalid_argument("kmeans: mean dimension does not match data");
  }
}

void check_assignments(const std::vector<int>& assignments, Eigen::Index m,
                       int k) {
  if (static_cast<Eigen::Index>(assignments.size()) != m) {
    throw std::invalid_argument("kmeans: one assignment per point required");
  }
  for (int a : assignments) {
    if (a < 0 || a >= k) {
      throw std::invalid_argument("kmeans: assignment index out of range");
    }
  }
}

// Nearest-mean assignment restricted to active clusters. Iterating cluster
// indices in ascending order with a strict '<' implements the
// lowest-index-wins tie rule with exact squared-distance comparison.
std::vector<int> assign_active(const Dataset& data, const Matrix& means,
                               const std::vector<bool>& active) {
  std::vector<int> out(static_cast<std::size_t>(data.size()));
  for (Eigen::Index i = 0; i < data.size(); ++i) {
    int best = -1;
    double best_d = std::numeric_limits<double>::infinity();
    for (Eigen::Index c = 0; c < means.rows(); ++c) {
      if (!active[static_cast<std::size_t>(c)]) continue;
      const double d = (data.point(i) - means.row(c)).squaredNorm();
      if (d < best_d) {
        best_d = d;
        best = static_cast<int>(c);
      }
    }
    out[static_cast<std::size_t>(i)] = best;
  }
  return out;
}

}  // namespace

std::vector<int> assign_clusters(const Dataset& data, const Matrix& means) {
  check_means(data, means);
  const std::vector<bool> all_active(static_cast<std::size_t>(means.rows()),
                                     true);
  return assign_active(data, means, all_active);
}

std::pair<Matrix, std::vector<bool>> update_means(
    const Dataset& data, const std::vector<int>& assignments, int k) {
  if (k < 1) {
    throw std::invalid_argument("kmeans: k must be at least 1");
  }
  check_assignments(assignments, data.size(), k);

  Matrix sums = Matrix::Zero(k, data.dim());
  std::vector<Eigen::Index> counts(static_cast<std::size_t>(k), 0);
  for (Eigen::Index i = 0; i < data.size(); ++i) {
    const int c = assignments[static_cast<std::size_t>(i)];
    sums.row(c) += data.point(i);
    ++counts[static_cast<std::size_t>(c)];
  }

  std::vector<bool> active(static_cast<std::size_t>(k), false);
  for (int c = 0; c < k; ++c) {
    if (counts[static_cast<std::size_t>(c)] > 0) {
      sums.row(c) /= static_cast<double>(counts[static_cast<std::size_t>(c)]);
      active[static_cast<std::size_t>(c)] = true;
    }
  }
  return {std::move(sums), std::move(active)};
}

double clustering_error(const Dataset& data, const Matrix& means,
                        const std::vector<int>& assignments) {
  check_means(data, means);
  check_assignments(assignments, data.size(), static_cast<int>(means.rows()));
  double sum = 0.0;
  for (Eigen::Index i = 0; i < data.size(); ++i) {
    const int c = assignments[static_cast<std::size_t>(i)];
    sum += (data.point(i) - means.row(c)).squaredNorm();
  }
  return sum / static_cast<double>(data.size());
}

HardClustering kmeans_fixed_point(const Dataset& data, Matrix initial_means,
                                  const KmeansOptions& opts) {
  check_means(data, initial_means);
  if (opts.max_iter < 1) {
    throw std::invalid_argument("kmeans: max_iter must be at least 1");
  }
  if (opts.rel_tol && *opts.rel_tol < 0.0) {
    throw std::invalid_argument("kmeans: rel_tol must be nonnegative");
  }

  const int k = static_cast<int>(initial_means.rows());
  HardClustering out;
  out.means = std::move(initial_means);
  out.active.assign(static_cast<std::size_t>(k), true);

  std::vector<int> prev;
  for (;;) {
    std::vector<int> cur = assign_active(data, out.means, out.active);
    if (!prev.empty() && cur == prev) {
      out.converged = true;  // assignment fixed point reached
      break;
    }
    if (out.iterations >= opts.max_iter) break;
    out.assignments = cur;

    // Activity indicators, then means for the active clusters only.
    // Deactivated clusters keep their last mean and are skipped by
    // assign_active from now on.
    auto [new_means, new_active] = update_means(data, cur, k);
    for (int c = 0; c < k; ++c) {
      const auto uc = static_cast<std::size_t>(c);
      out.active[uc] = new_active[uc];
      if (new_active[uc]) {
        out.means.row(c) = new_means.row(c);
      }
    }

    out.error_trajectory.push_back(
        clustering_error(data, out.means, out.assignments));
    ++out.iterations;

    if (opts.rel_tol && out.error_trajectory.size() >= 2) {
      const double e_prev =
          out.error_trajectory[out.error_trajectory.size() - 2];
      const double e_cur = out.error_trajectory.back();
      if (e_prev - e_cur <= *opts.rel_tol * e_prev) {
        out.converged = true;
        break;
      }
    }
    prev = std::move(cur);
  }
  return out;
}

HardClustering kmeans_multi_restart(const Dataset& data, int k, int restarts,
                                    InitStrategy init, RngSeed seed,
                                    const KmeansOptions& opts) {
  if (restarts < 1) {
    throw std::invalid_argument("kmeans: restarts must be at least 1");
  }
  if (k < 1) {
    throw std::invalid_argument("kmeans: k must be at least 1");
  }

  HardClustering best;
  for (int r = 0; r < restarts; ++r) {
    const RngSeed sub = Rng::derive(seed, static_cast<std::uint64_t>(r));
    Matrix means = (init == InitStrategy::kRandomPoints)
                       ? init_random_points(data, k, sub)
                       : init_pca_partition(data, k).means;
    HardClustering run = kmeans_fixed_point(data, std::move(means), opts);
    if (r == 0 || run.final_error() < best.final_error()) {
      best = std::move(run);
    }
  }
  return best;
}

}  // namespace clusterkit
