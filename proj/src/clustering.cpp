#include "holder/clustering.hpp"

#include "holder/closed_form.hpp"
#include "holder/rng.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace holder {

namespace {

std::vector<NaturalParameter> members_of(const std::vector<NaturalParameter>& points, const std::vector<int>& labels,
                                         int cluster) {
  std::vector<NaturalParameter> out;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (labels[i] == cluster) out.push_back(points[i]);
  }
  return out;
}

}  // namespace

ToyDataset generate_toy_dataset(const ToyDatasetConfig& config) {
  if (config.n < 2 || config.n % 2 != 0) throw std::invalid_argument("toy dataset: n must be even and >= 2");
  Rng rng(config.seed);
  ToyDataset data;
  const Eigen::Vector2d centers[2] = {config.left_center, config.right_center};
  const Eigen::Vector2d origins[2] = {config.left_center, config.right_radial_origin.value_or(config.right_center)};
  for (int cluster = 0; cluster < 2; ++cluster) {
    for (int i = 0; i < config.n / 2; ++i) {
      Eigen::Vector2d mean;
      Eigen::Vector2d radial;
      do {
        mean = centers[cluster] + Eigen::Vector2d(rng.normal(), rng.normal());
        radial = mean - origins[cluster];
      } while (radial.norm() < 1e-12);
      radial.normalize();
      const double major = rng.gamma(config.eigen_shape, config.major_scale);
      const double minor = rng.gamma(config.eigen_shape, config.minor_scale);
      Eigen::Matrix2d rotation;
      rotation << radial.x(), -radial.y(), radial.y(), radial.x();
      const Eigen::Matrix2d cov = rotation * Eigen::Vector2d(major, minor).asDiagonal() * rotation.transpose();
      data.gaussians.push_back({mean, 0.5 * (cov + cov.transpose())});
      data.true_labels.push_back(cluster);
    }
  }
  return data;
}

ClusteringState kmeans(const FamilyPtr& family, const std::vector<NaturalParameter>& points, int clusters,
                       const ConjugatePair& pair, double gamma, std::uint64_t seed, const KMeansSettings& settings) {
  if (!family) throw std::invalid_argument("kmeans: no family");
  if (clusters < 1) throw std::invalid_argument("kmeans: need at least one cluster");
  if (points.empty()) throw std::invalid_argument("kmeans: no points");
  require_forward(pair, "kmeans");
  if (!(gamma > 0.0)) throw std::invalid_argument("kmeans: gamma must be > 0");

  const CentroidProblem problem{CentroidKind::sym_hd, pair, gamma};
  const std::size_t n = points.size();
  auto divergence = [&](const NaturalParameter& p, const NaturalParameter& c) {
    return sym_hd_closed(*family, p, c, pair, gamma);
  };

  Rng rng(seed);
  ClusteringState state;
  state.labels.resize(n);
  if (settings.initial_labels.empty()) {
    for (auto& l : state.labels) l = static_cast<int>(rng.index(static_cast<std::uint64_t>(clusters)));
  } else {
    if (settings.initial_labels.size() != n) throw std::invalid_argument("kmeans: initial label count mismatch");
    for (std::size_t i = 0; i < n; ++i) {
      const int l = settings.initial_labels[i];
      if (l < 0 || l >= clusters) throw std::invalid_argument("kmeans: initial label out of range");
      state.labels[i] = l;
    }
  }
  std::vector<std::optional<NaturalParameter>> centers(static_cast<std::size_t>(clusters));

  for (int round = 1; round <= settings.max_rounds; ++round) {
    state.iterations = round;
    std::vector<int> empty;
    for (int l = 0; l < clusters; ++l) {
      auto members = members_of(points, state.labels, l);
      auto& center = centers[static_cast<std::size_t>(l)];
      if (members.empty()) {
        empty.push_back(l);
        continue;
      }
      const WeightedSet set(family, std::move(members));
      if (!center || !settings.variational) {
        const NaturalParameter start = set.barycenter();
        std::optional<double> target;
        if (settings.variational) target = centroid_energy(set, problem, start);
        center = solve_centroid(set, problem, start, settings.cccp, target).centroid;
      } else {
        const double previous = centroid_energy(set, problem, *center);
        center = solve_centroid(set, problem, *center, settings.cccp, previous).centroid;
      }
    }
    // Each empty cluster is reseeded at the point farthest from the center
    // of its own cluster; a point is used at most once.
    std::vector<bool> taken(n, false);
    for (int l : empty) {
      std::size_t far = n;
      double far_value = -1.0;
      for (std::size_t i = 0; i < n; ++i) {
        const auto& own = centers[static_cast<std::size_t>(state.labels[i])];
        if (taken[i] || !own) continue;
        const double d = divergence(points[i], *own);
        if (d > far_value) {
          far_value = d;
          far = i;
        }
      }
      if (far == n) continue;
      taken[far] = true;
      centers[static_cast<std::size_t>(l)] = points[far];
    }

    std::vector<int> next(n);
    double energy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      int best = -1;
      double best_value = 0.0;
      for (int l = 0; l < clusters; ++l) {
        const auto& c = centers[static_cast<std::size_t>(l)];
        if (!c) continue;
        const double d = divergence(points[i], *c);
        if (best < 0 || d < best_value) {
          best = l;
          best_value = d;
        }
      }
      next[i] = best;
      energy += best_value;
    }
    const double previous_energy = state.energy_trace.empty() ? energy : state.energy_trace.back();
    state.energy = energy;
    state.energy_trace.push_back(energy);
    // Partial center updates can leave the labels unchanged while the centers
    // are still moving, so stability also requires a stalled energy.
    const bool stalled = previous_energy - energy <= settings.energy_tolerance * std::max(1.0, std::abs(energy));
    if (next == state.labels && ((round > 1 && stalled) || !settings.variational)) {
      state.converged = true;
      break;
    }
    state.labels = std::move(next);
  }

  for (auto& c : centers) {
    if (c) state.centers.push_back(*c);
  }
  return state;
}

double accuracy(const std::vector<int>& labels, const std::vector<int>& true_labels) {
  if (labels.size() != true_labels.size() || labels.empty()) {
    throw std::invalid_argument("accuracy: label vectors differ in length");
  }
  std::size_t same = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] < 0 || labels[i] > 1 || true_labels[i] < 0 || true_labels[i] > 1) {
      throw std::invalid_argument("accuracy: two-cluster labels expected");
    }
    same += labels[i] == true_labels[i] ? 1 : 0;
  }
  const double match = static_cast<double>(same) / static_cast<double>(labels.size());
  return std::max(match, 1.0 - match);
}

ExperimentResult run_experiment(int n, const ConjugatePair& pair, double gamma, int runs, std::uint64_t seed,
                                const KMeansSettings& settings) {
  if (runs < 1) throw std::invalid_argument("run_experiment: runs must be >= 1");
  const FamilyPtr family = make_gaussian(2);
  ExperimentResult result{0.0, 0.0, {}};
  for (int r = 0; r < runs; ++r) {
    const std::uint64_t run_seed = derive_seed(seed, static_cast<std::uint64_t>(r));
    ToyDatasetConfig config;
    config.n = n;
    config.seed = derive_seed(run_seed, 0);
    const ToyDataset data = generate_toy_dataset(config);
    std::vector<NaturalParameter> points;
    points.reserve(data.gaussians.size());
    for (const auto& g : data.gaussians) points.push_back(family->to_natural(g));
    const ClusteringState state = kmeans(family, points, 2, pair, gamma, derive_seed(run_seed, 1), settings);
    result.accuracies.push_back(accuracy(state.labels, data.true_labels));
  }
  const double count = static_cast<double>(runs);
  result.mean_accuracy = std::accumulate(result.accuracies.begin(), result.accuracies.end(), 0.0) / count;
  if (runs > 1) {
    double ss = 0.0;
    for (double a : result.accuracies) ss += (a - result.mean_accuracy) * (a - result.mean_accuracy);
    result.std_accuracy = std::sqrt(ss / (count - 1.0));
  }
  return result;
}

}  // namespace holder
