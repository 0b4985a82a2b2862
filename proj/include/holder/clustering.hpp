#pragma once

// Variational k-means over distributions with the symmetric proper Hoelder
// divergence, and the two-cluster toy experiment on 2D Gaussians.

#include "holder/centroids.hpp"
#include "holder/exp_family.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace holder {

struct ToyDatasetConfig {
  int n = 50;  // even; n/2 Gaussians per cluster
  std::uint64_t seed = 0;
  Eigen::Vector2d left_center{-2.0, 0.0};
  Eigen::Vector2d right_center{2.0, 0.0};
  double eigen_shape = 7.0;
  double major_scale = 0.01;  // Gamma scale of the eigenvalue along mu - center
  double minor_scale = 0.003;
  /// Point the right cluster's major axes radiate from; its own center when unset.
  std::optional<Eigen::Vector2d> right_radial_origin;
};

struct ToyDataset {
  std::vector<GaussianSource> gaussians;
  std::vector<int> true_labels;  // 0 = left cluster, 1 = right cluster
};

/// Means ~ N(center, I); covariance eigenvalues ~ Gamma(shape, scale) with the
/// major axis pointing away from the cluster center.
ToyDataset generate_toy_dataset(const ToyDatasetConfig& config);

struct KMeansSettings {
  int max_rounds = 100;
  /// Center updates stop as soon as the cluster energy improves. When false,
  /// each center is solved to convergence from the cluster barycenter.
  bool variational = true;
  /// Relative energy decrease under which a round with unchanged labels ends
  /// the variational iteration.
  double energy_tolerance = 1e-9;
  CccpSettings cccp;
  /// Starting labels; drawn uniformly at random from the seed when empty.
  std::vector<int> initial_labels;
};

struct ClusteringState {
  std::vector<NaturalParameter> centers;
  std::vector<int> labels;  // 0-based cluster index per point
  double energy = 0.0;      // sum_i sym_hd(theta_i, center of i)
  int iterations = 0;
  std::vector<double> energy_trace;  // after each reassignment
  bool converged = false;            // labels stable before max_rounds
};

/// Starts from uniformly random labels drawn from `seed`. Ties in the
/// assignment go to the lowest cluster index; an empty cluster is reseeded
/// at the point farthest from the center of the cluster it belongs to.
ClusteringState kmeans(const FamilyPtr& family, const std::vector<NaturalParameter>& points, int clusters,
                       const ConjugatePair& pair, double gamma, std::uint64_t seed,
                       const KMeansSettings& settings = {});

/// Fraction of agreeing labels, maximized over the two label permutations.
double accuracy(const std::vector<int>& labels, const std::vector<int>& true_labels);

struct ExperimentResult {
  double mean_accuracy;
  double std_accuracy;  // sample standard deviation
  std::vector<double> accuracies;
};

/// `runs` independent datasets and initializations. Run r draws from
/// derive_seed(seed, r), so the datasets do not depend on (alpha, gamma).
ExperimentResult run_experiment(int n, const ConjugatePair& pair, double gamma, int runs, std::uint64_t seed,
                                const KMeansSettings& settings = {});

}  // namespace holder
