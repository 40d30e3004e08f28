#include "clusterkit/gmm.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "clusterkit/init.hpp"

namespace clusterkit {

namespace {

constexpr double kLog2Pi = 1.8378770664093453;  // log(2*pi)
constexpr double kDegenerateSize = 1e-10;

// Cholesky factor plus the derived quantities the E-step needs per component.
struct ComponentCache {
  Eigen::LLT<Eigen::MatrixXd> llt;
  double log_det = 0.0;
  double log_prior = -std::numeric_limits<double>::infinity();
  bool alive = false;  // prior > 0
};

double log_det_from_llt(const Eigen::LLT<Eigen::MatrixXd>& llt) {
  double log_det = 0.0;
  const auto& factor = llt.matrixLLT();
  for (Eigen::Index j = 0; j < factor.rows(); ++j) {
    log_det += 2.0 * std::log(factor(j, j));
  }
  return log_det;
}

std::vector<ComponentCache> build_caches(const GmmParams& params) {
  std::vector<ComponentCache> caches(
      static_cast<std::size_t>(params.components()));
  for (int c = 0; c < params.components(); ++c) {
    auto& cache = caches[static_cast<std::size_t>(c)];
    if (params.priors(c) <= 0.0) continue;  // stays dead
    cache.llt.compute(params.covariances[static_cast<std::size_t>(c)]);
    if (cache.llt.info() != Eigen::Success) {
      throw std::runtime_error("gmm: covariance not positive definite");
    }
    cache.log_det = log_det_from_llt(cache.llt);
    cache.log_prior = std::log(params.priors(c));
    cache.alive = true;
  }
  return caches;
}

double log_pdf_cached(const ComponentCache& cache, const RowVec& x,
                      const RowVec& mean) {
  const Eigen::VectorXd diff = (x - mean).transpose();
  const double quad =
      cache.llt.matrixL().solve(diff).squaredNorm();
  return -0.5 * (static_cast<double>(x.size()) * kLog2Pi + cache.log_det +
                 quad);
}

double mean_coordinate_variance(const Dataset& data) {
  const RowVec centroid = data.points().colwise().mean();
  const double total =
      (data.points().rowwise() - centroid).squaredNorm() /
      static_cast<double>(data.size());
  return total / static_cast<double>(data.dim());
}

}  // namespace

void validate_gmm_params(const GmmParams& params, Eigen::Index dim) {
  const int k = params.components();
  if (k < 1) {
    throw std::invalid_argument("gmm: need at least one component");
  }
  if (params.means.rows() != k || params.means.cols() != dim) {
    throw std::invalid_argument("gmm: means shape mismatch");
  }
  if (static_cast<int>(params.covariances.size()) != k) {
    throw std::invalid_argument("gmm: one covariance per component required");
  }
  double prior_sum = 0.0;
  for (int c = 0; c < k; ++c) {
    const auto& cov = params.covariances[static_cast<std::size_t>(c)];
    if (cov.rows() != dim || cov.cols() != dim) {
      throw std::invalid_argument("gmm: covariance shape mismatch");
    }
    const double scale = std::max(1.0, cov.cwiseAbs().maxCoeff());
    if ((cov - cov.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
      throw std::invalid_argument("gmm: covariance not symmetric");
    }
    if (params.priors(c) < 0.0) {
      throw std::invalid_argument("gmm: priors must be nonnegative");
    }
    prior_sum += params.priors(c);
  }
  if (std::abs(prior_sum - 1.0) > 1e-12) {
    throw std::invalid_argument("gmm: priors must sum to 1");
  }
}

double log_gaussian_pdf(const RowVec& x, const RowVec& mean,
                        const Eigen::MatrixXd& cov) {
  if (x.size() != mean.size() || cov.rows() != x.size() ||
      cov.cols() != x.size()) {
    throw std::invalid_argument("log_gaussian_pdf: dimension mismatch");
  }
  Eigen::LLT<Eigen::MatrixXd> llt(cov);
  if (llt.info() != Eigen::Success) {
    throw std::runtime_error("gmm: covariance not positive definite");
  }
  const Eigen::VectorXd diff = (x - mean).transpose();
  const double quad = llt.matrixL().solve(diff).squaredNorm();
  return -0.5 * (static_cast<double>(x.size()) * kLog2Pi +
                 log_det_from_llt(llt) + quad);
}

EStepResult e_step(const Dataset& data, const GmmParams& params) {
  validate_gmm_params(params, data.dim());
  const int k = params.components();
  const auto caches = build_caches(params);

  Matrix resp(data.size(), k);
  std::vector<double> log_weight(static_cast<std::size_t>(k));
  double nll = 0.0;
  for (Eigen::Index i = 0; i < data.size(); ++i) {
    const RowVec x = data.point(i);
    double row_max = -std::numeric_limits<double>::infinity();
    for (int c = 0; c < k; ++c) {
      const auto& cache = caches[static_cast<std::size_t>(c)];
      double lw = -std::numeric_limits<double>::infinity();
      if (cache.alive) {
        lw = cache.log_prior + log_pdf_cached(cache, x, params.means.row(c));
      }
      log_weight[static_cast<std::size_t>(c)] = lw;
      row_max = std::max(row_max, lw);
    }
    double denom = 0.0;
    for (int c = 0; c < k; ++c) {
      const double lw = log_weight[static_cast<std::size_t>(c)];
      const double e = std::isinf(lw) ? 0.0 : std::exp(lw - row_max);
      resp(i, c) = e;
      denom += e;
    }
    if (denom <= 0.0) {
      // only reachable when every log weight itself overflowed to -inf
      throw std::runtime_error(
          "gmm: mixture density underflow (covariance scale too extreme)");
    }
    resp.row(i) /= denom;
    nll -= row_max + std::log(denom);
  }
  return {std::move(resp), nll};
}

GmmParams m_step(const Dataset& data, const Matrix& responsibilities,
                 const GmmParams& previous, const GmmOptions& opts) {
  validate_gmm_params(previous, data.dim());
  const int k = previous.components();
  if (responsibilities.rows() != data.size() ||
      responsibilities.cols() != k) {
    throw std::invalid_argument("m_step: responsibilities shape mismatch");
  }
  for (Eigen::Index i = 0; i < responsibilities.rows(); ++i) {
    if (std::abs(responsibilities.row(i).sum() - 1.0) > 1e-8) {
      throw std::invalid_argument(
          "m_step: responsibility rows must sum to 1");
    }
  }

  GmmParams out = previous;  // frozen components keep these values
  const Eigen::VectorXd sizes = responsibilities.colwise().sum().transpose();
  const double ridge =
      (opts.mode == CovarianceMode::kFull)
          ? opts.ridge_scale * mean_coordinate_variance(data)
          : 0.0;
  const Eigen::Index n = data.dim();

  for (int c = 0; c < k; ++c) {
    if (sizes(c) < kDegenerateSize) {
      out.priors(c) = 0.0;
      continue;
    }
    out.priors(c) = sizes(c) / static_cast<double>(data.size());
    const RowVec mean =
        responsibilities.col(c).transpose() * data.points() / sizes(c);
    out.means.row(c) = mean;
    auto& cov = out.covariances[static_cast<std::size_t>(c)];
    if (opts.mode == CovarianceMode::kFixedIsotropic) {
      cov = opts.sigma2 * Eigen::MatrixXd::Identity(n, n);
    } else {
      const Matrix centered = data.points().rowwise() - mean;
      Eigen::MatrixXd raw = centered.transpose() *
                            responsibilities.col(c).asDiagonal() * centered /
                            sizes(c);
      raw = 0.5 * (raw + raw.transpose());  // clear rounding asymmetry
      cov = raw + ridge * Eigen::MatrixXd::Identity(n, n);
    }
  }

  const double prior_sum = out.priors.sum();
  out.priors /= prior_sum;
  return out;
}

SoftClustering em_fit(const Dataset& data, GmmParams init,
                      const GmmOptions& opts) {
  validate_gmm_params(init, data.dim());
  if (opts.max_iter < 1) {
    throw std::invalid_argument("em_fit: max_iter must be at least 1");
  }
  if (opts.tol <= 0.0) {
    throw std::invalid_argument("em_fit: tol must be positive");
  }

  SoftClustering sc;
  sc.params = std::move(init);
  double prev_nll = std::numeric_limits<double>::quiet_NaN();
  for (;;) {
    EStepResult step = e_step(data, sc.params);
    sc.responsibilities = std::move(step.responsibilities);
    sc.nll_trajectory.push_back(step.nll);
    if (!std::isnan(prev_nll) &&
        std::abs(step.nll - prev_nll) <= opts.tol * (1.0 + std::abs(step.nll))) {
      sc.converged = true;
      break;
    }
    if (sc.iterations >= opts.max_iter) break;
    sc.params = m_step(data, sc.responsibilities, sc.params, opts);
    ++sc.iterations;
    prev_nll = step.nll;
  }
  return sc;
}

GmmParams default_gmm_init(const Dataset& data, int k, RngSeed seed,
                           const GmmOptions& opts) {
  GmmParams params;
  params.means = init_random_points(data, k, seed);
  const double scale = (opts.mode == CovarianceMode::kFixedIsotropic)
                           ? opts.sigma2
                           : mean_coordinate_variance(data);
  params.covariances.assign(
      static_cast<std::size_t>(k),
      scale * Eigen::MatrixXd::Identity(data.dim(), data.dim()));
  params.priors =
      Eigen::VectorXd::Constant(k, 1.0 / static_cast<double>(k));
  return params;
}

SoftClustering em_multi_restart(const Dataset& data, int k, int restarts,
                                RngSeed seed, const GmmOptions& opts) {
  if (restarts < 1) {
    throw std::invalid_argument("em_multi_restart: restarts must be >= 1");
  }
  SoftClustering best;
  for (int r = 0; r < restarts; ++r) {
    const RngSeed sub = Rng::derive(seed, static_cast<std::uint64_t>(r));
    SoftClustering run =
        em_fit(data, default_gmm_init(data, k, sub, opts), opts);
    if (r == 0 || run.final_nll() < best.final_nll()) {
      best = std::move(run);
    }
  }
  return best;
}

std::vector<int> hard_assignments_from_soft(const Matrix& responsibilities) {
  std::vector<int> out(static_cast<std::size_t>(responsibilities.rows()));
  for (Eigen::Index i = 0; i < responsibilities.rows(); ++i) {
    int best = 0;
    for (Eigen::Index c = 1; c < responsibilities.cols(); ++c) {
      if (responsibilities(i, c) > responsibilities(i, best)) {
        best = static_cast<int>(c);
      }
    }
    out[static_cast<std::size_t>(i)] = best;
  }
  return out;
}

std::vector<int> hard_assignments_from_soft(const SoftClustering& soft) {
  return hard_assignments_from_soft(soft.responsibilities);
}

}  // namespace clusterkit
