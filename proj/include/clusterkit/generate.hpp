#pragma once

#include <vector>

#include "clusterkit/dataset.hpp"
#include "clusterkit/gmm.hpp"
#include "clusterkit/rng.hpp"

namespace clusterkit {

/// A synthetic dataset together with the 0-based generating labels.
struct LabeledDataset {
  Dataset data;
  std::vector<int> labels;
};

/// Draws m points from the mixture: per point, one uniform draw selects the
/// component (cumulative priors), then one normal draw per coordinate is
/// transformed through the component's Cholesky factor. Deterministic given
/// the seed; see Rng for the exact draw scheme.
LabeledDataset sample_gmm(const GmmParams& params, int m, RngSeed seed);

/// Concentric noisy rings: for each ring, m_per_ring points at uniform
/// random angles, the radius perturbed by N(0, noise_sd^2). Per point the
/// angle is drawn first, then the radius noise. Labels are ring indices.
LabeledDataset generate_rings(int m_per_ring,
                              const std::vector<double>& radii,
                              double noise_sd, RngSeed seed);

/// 2-D isotropic Gaussian blobs with means equally spaced on a circle of
/// radius `separation`, covariances sd^2 * I and the given priors (uniform
/// when empty). Thin wrapper over sample_gmm.
LabeledDataset generate_blobs(int k, int m, double separation, double sd,
                              const std::vector<double>& priors, RngSeed seed);

}  // namespace clusterkit
