#include "clusterkit/generate.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace clusterkit {

LabeledDataset sample_gmm(const GmmParams& params, int m, RngSeed seed) {
  if (m < 1) {
    throw std::invalid_argument("sample_gmm: m must be at least 1");
  }
  const Eigen::Index n = params.means.cols();
  validate_gmm_params(params, n);
  const int k = params.components();

  std::vector<Eigen::MatrixXd> factors(static_cast<std::size_t>(k));
  int last_alive = -1;
  for (int c = 0; c < k; ++c) {
    if (params.priors(c) <= 0.0) continue;
    Eigen::LLT<Eigen::MatrixXd> llt(
        params.covariances[static_cast<std::size_t>(c)]);
    if (llt.info() != Eigen::Success) {
      throw std::runtime_error("sample_gmm: covariance not positive definite");
    }
    factors[static_cast<std::size_t>(c)] = llt.matrixL();
    last_alive = c;
  }

  Rng rng(seed);
  Matrix points(m, n);
  std::vector<int> labels(static_cast<std::size_t>(m));
  Eigen::VectorXd z(n);
  for (int i = 0; i < m; ++i) {
    const double u = rng.next_unit();
    int component = last_alive;
    double cumulative = 0.0;
    for (int c = 0; c < k; ++c) {
      cumulative += params.priors(c);
      if (u < cumulative) {
        component = c;
        break;
      }
    }
    for (Eigen::Index d = 0; d < n; ++d) {
      z(d) = rng.next_gaussian();
    }
    points.row(i) =
        params.means.row(component) +
        (factors[static_cast<std::size_t>(component)] * z).transpose();
    labels[static_cast<std::size_t>(i)] = component;
  }
  return {Dataset(std::move(points)), std::move(labels)};
}

LabeledDataset generate_rings(int m_per_ring,
                              const std::vector<double>& radii,
                              double noise_sd, RngSeed seed) {
  if (m_per_ring < 1) {
    throw std::invalid_argument("generate_rings: m_per_ring must be >= 1");
  }
  if (radii.empty()) {
    throw std::invalid_argument("generate_rings: need at least one radius");
  }
  for (std::size_t r = 0; r < radii.size(); ++r) {
    if (!(radii[r] > 0.0) || (r > 0 && radii[r] <= radii[r - 1])) {
      throw std::invalid_argument(
          "generate_rings: radii must be positive and strictly increasing");
    }
  }
  if (noise_sd < 0.0) {
    throw std::invalid_argument("generate_rings: noise_sd must be >= 0");
  }

  Rng rng(seed);
  const auto rings = static_cast<Eigen::Index>(radii.size());
  Matrix points(rings * m_per_ring, 2);
  std::vector<int> labels(static_cast<std::size_t>(rings * m_per_ring));
  Eigen::Index row = 0;
  for (Eigen::Index r = 0; r < rings; ++r) {
    for (int j = 0; j < m_per_ring; ++j, ++row) {
      const double angle = 2.0 * std::numbers::pi * rng.next_unit();
      const double radius =
          radii[static_cast<std::size_t>(r)] + noise_sd * rng.next_gaussian();
      points(row, 0) = radius * std::cos(angle);
      points(row, 1) = radius * std::sin(angle);
      labels[static_cast<std::size_t>(row)] = static_cast<int>(r);
    }
  }
  return {Dataset(std::move(points)), std::move(labels)};
}

LabeledDataset generate_blobs(int k, int m, double separation, double sd,
                              const std::vector<double>& priors,
                              RngSeed seed) {
  if (k < 1) {
    throw std::invalid_argument("generate_blobs: k must be at least 1");
  }
  if (!(sd > 0.0)) {
    throw std::invalid_argument("generate_blobs: sd must be positive");
  }
  if (!priors.empty() && static_cast<int>(priors.size()) != k) {
    throw std::invalid_argument("generate_blobs: need one prior per blob");
  }

  GmmParams params;
  params.means.resize(k, 2);
  for (int c = 0; c < k; ++c) {
    const double angle = 2.0 * std::numbers::pi * c / k;
    params.means(c, 0) = separation * std::cos(angle);
    params.means(c, 1) = separation * std::sin(angle);
  }
  params.covariances.assign(static_cast<std::size_t>(k),
                            sd * sd * Eigen::MatrixXd::Identity(2, 2));
  if (priors.empty()) {
    params.priors = Eigen::VectorXd::Constant(k, 1.0 / k);
  } else {
    params.priors =
        Eigen::Map<const Eigen::VectorXd>(priors.data(), k);
  }
  return sample_gmm(params, m, seed);
}

}  // namespace clusterkit
