#include "clusterkit/init.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

namespace clusterkit {

namespace {

// First coordinate with magnitude above the noise floor decides the sign.
void normalize_sign(RowVec& v) {
  for (Eigen::Index j = 0; j < v.size(); ++j) {
    if (std::abs(v(j)) > 1e-12) {
      if (v(j) < 0.0) v = -v;
      return;
    }
  }
}

}  // namespace

Matrix init_random_points(const Dataset& data, int k, RngSeed seed) {
  if (k < 1) {
    throw std::invalid_argument("init_random_points: k must be at least 1");
  }
  if (static_cast<Eigen::Index>(k) > data.size()) {
    throw std::invalid_argument(
        "init_random_points: k exceeds the number of data points");
  }

  std::vector<Eigen::Index> idx(static_cast<std::size_t>(data.size()));
  std::iota(idx.begin(), idx.end(), Eigen::Index{0});

  Rng rng(seed);
  const auto m = static_cast<std::uint64_t>(data.size());
  for (int i = 0; i < k; ++i) {
    const auto j = static_cast<std::size_t>(i) +
                   rng.next_below(m - static_cast<std::uint64_t>(i));
    std::swap(idx[static_cast<std::size_t>(i)], idx[j]);
  }

  Matrix out(k, data.dim());
  for (int i = 0; i < k; ++i) {
    out.row(i) = data.point(idx[static_cast<std::size_t>(i)]);
  }
  return out;
}

PrincipalDirection principal_direction(const Dataset& data,
                                       const PowerIterationOptions& opts) {
  const Eigen::Index n = data.dim();
  const Eigen::MatrixXd moment =
      data.points().transpose() * data.points() /
      static_cast<double>(data.size());

  if (moment.cwiseAbs().maxCoeff() == 0.0) {
    throw std::runtime_error(
        "principal_direction: degenerate second moment (all points zero)");
  }

  // Deterministic start; if an iterate lands in the null space of the
  // moment matrix we fall through to the standard basis vectors, at least
  // one of which has a nonzero image.
  Eigen::VectorXd v = Eigen::VectorXd::Ones(n) / std::sqrt(double(n));
  Eigen::Index next_start = 0;

  for (int iter = 0; iter < opts.max_iter; ++iter) {
    Eigen::VectorXd w = moment * v;
    const double norm = w.norm();
    if (norm < 1e-200) {
      if (next_start >= n) {
        throw std::runtime_error(
            "principal_direction: degenerate second moment");
      }
      v = Eigen::VectorXd::Unit(n, next_start++);
      continue;
    }
    w /= norm;
    const double cos_angle = std::abs(w.dot(v));
    v = w;
    if (1.0 - cos_angle <= opts.tol) {
      RowVec dir = v.transpose();
      normalize_sign(dir);
      const double variance = (dir * moment * dir.transpose()).value();
      return {std::move(dir), variance};
    }
  }

  RowVec last = v.transpose();
  normalize_sign(last);
  throw PowerIterationError(
      "principal_direction: power iteration did not converge", std::move(last));
}

PcaPartitionInit init_pca_partition(const Dataset& data, int k) {
  if (k < 1) {
    throw std::invalid_argument("init_pca_partition: k must be at least 1");
  }

  const PrincipalDirection pd = principal_direction(data);
  const Eigen::VectorXd proj = data.points() * pd.direction.transpose();
  const double t_min = proj.minCoeff();
  const double t_max = proj.maxCoeff();

  if (t_min == t_max) {
    // All projections coincide; an interval split is meaningless.
    return {init_random_points(data, k, RngSeed{0}), true};
  }

  const double width = (t_max - t_min) / static_cast<double>(k);
  std::vector<Eigen::Index> counts(static_cast<std::size_t>(k), 0);
  Matrix sums = Matrix::Zero(k, data.dim());
  for (Eigen::Index i = 0; i < data.size(); ++i) {
    auto c = static_cast<Eigen::Index>((proj(i) - t_min) / width);
    if (c >= k) c = k - 1;  // t_max lands in the last, right-closed interval
    sums.row(c) += data.point(i);
    ++counts[static_cast<std::size_t>(c)];
  }

  Matrix means(k, data.dim());
  for (int c = 0; c < k; ++c) {
    if (counts[static_cast<std::size_t>(c)] > 0) {
      means.row(c) =
          sums.row(c) / static_cast<double>(counts[static_cast<std::size_t>(c)]);
      continue;
    }
    // Empty interval: borrow the point whose projection is nearest the
    // interval midpoint (lowest index on ties).
    const double mid = t_min + (static_cast<double>(c) + 0.5) * width;
    Eigen::Index nearest = 0;
    double best = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < data.size(); ++i) {
      const double d = std::abs(proj(i) - mid);
      if (d < best) {
        best = d;
        nearest = i;
      }
    }
    means.row(c) = data.point(nearest);
  }
  return {std::move(means), false};
}

}  // namespace clusterkit
