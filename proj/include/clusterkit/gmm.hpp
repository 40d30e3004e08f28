#pragma once

#include <Eigen/Dense>
#include <vector>

#include "clusterkit/dataset.hpp"
#include "clusterkit/rng.hpp"

namespace clusterkit {

/// Covariance handling for the M-step. kFull re-estimates each covariance
/// (plus a small ridge, see GmmOptions::ridge_scale); kFixedIsotropic holds
/// every covariance at sigma2 * I. As sigma2 shrinks, the argmax of the
/// responsibilities reduces to the nearest-mean hard assignment.
enum class CovarianceMode { kFull, kFixedIsotropic };

struct GmmOptions {
  CovarianceMode mode = CovarianceMode::kFull;
  double sigma2 = 1.0;  // only read in kFixedIsotropic mode
  int max_iter = 100;
  double tol = 1e-8;  // relative change of the negative log-likelihood
  /// Ridge added to every re-estimated covariance:
  /// ridge_scale * (mean of per-coordinate data variances) * I.
  double ridge_scale = 1e-6;
};

/// Mixture parameter estimates: component means, covariances and priors.
struct GmmParams {
  Matrix means;                              // k x n
  std::vector<Eigen::MatrixXd> covariances;  // k symmetric PD n x n matrices
  Eigen::VectorXd priors;                    // nonnegative, sums to 1

  int components() const { return static_cast<int>(priors.size()); }
};

/// Result of an EM run. Responsibilities are row-stochastic: entry (i, c)
/// is the posterior probability that point i came from component c.
struct SoftClustering {
  Matrix responsibilities;  // m x k, rows sum to 1
  GmmParams params;
  std::vector<double> nll_trajectory;  // one entry per E-step evaluation
  int iterations = 0;                  // number of M-step updates applied
  bool converged = false;

  double final_nll() const { return nll_trajectory.back(); }
};

/// Shape, prior and symmetry checks for mixture parameters. Positive
/// definiteness is enforced where the matrices are factorized.
void validate_gmm_params(const GmmParams& params, Eigen::Index dim);

/// log N(x; mean, cov) through a Cholesky factorization: the log-determinant
/// comes from the factor diagonal and the quadratic form from a triangular
/// solve. Throws std::runtime_error when the factorization fails.
double log_gaussian_pdf(const RowVec& x, const RowVec& mean,
                        const Eigen::MatrixXd& cov);

struct EStepResult {
  Matrix responsibilities;
  double nll;  // negative log-likelihood of the dataset under `params`
};

/// Responsibility update, computed in log space with per-row
/// max-subtraction. Components with zero prior get zero responsibility.
EStepResult e_step(const Dataset& data, const GmmParams& params);

/// Weighted parameter re-estimation. Components whose effective size drops
/// below 1e-10 are frozen: prior zeroed, mean and covariance kept from
/// `previous`, remaining priors renormalized.
GmmParams m_step(const Dataset& data, const Matrix& responsibilities,
                 const GmmParams& previous, const GmmOptions& opts = {});

/// Alternates e_step / m_step until the relative NLL change drops below
/// opts.tol or opts.max_iter M-steps have run.
SoftClustering em_fit(const Dataset& data, GmmParams init,
                      const GmmOptions& opts = {});

/// Restart initialization: means from init_random_points, covariances
/// (mean per-coordinate data variance) * I (or sigma2 * I in fixed-isotropic
/// mode), uniform priors.
GmmParams default_gmm_init(const Dataset& data, int k, RngSeed seed,
                           const GmmOptions& opts = {});

/// Runs em_fit once per restart with sub-seeds derived from (seed, restart
/// index); returns the run with the smallest final NLL (ties to the lowest
/// restart index).
SoftClustering em_multi_restart(const Dataset& data, int k, int restarts,
                                RngSeed seed, const GmmOptions& opts = {});

/// Per-point argmax of the responsibilities; ties go to the lowest
/// component index, mirroring the hard-clustering tie rule.
std::vector<int> hard_assignments_from_soft(const Matrix& responsibilities);
std::vector<int> hard_assignments_from_soft(const SoftClustering& soft);

}  // namespace clusterkit
