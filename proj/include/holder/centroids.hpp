#pragma once

// Hoelder centroids of a weighted set of natural parameters, computed by the
// concave-convex procedure. Each objective splits into a convex term in the
// centroid and a concave sum over the set; linearizing the concave part gives
// a fixed-point update through the inverse gradient map.

#include "holder/conjugate_pair.hpp"
#include "holder/exp_family.hpp"

#include <optional>
#include <vector>

namespace holder {

class WeightedSet {
 public:
  /// Weights default to uniform. They must be positive and are normalized to
  /// sum to 1. Every parameter must lie in the family's domain.
  WeightedSet(FamilyPtr family, std::vector<NaturalParameter> thetas, std::vector<double> weights = {});

  const ExponentialFamily& family() const noexcept { return *family_; }
  const FamilyPtr& family_ptr() const noexcept { return family_; }
  std::size_t size() const noexcept { return thetas_.size(); }
  const std::vector<NaturalParameter>& thetas() const noexcept { return thetas_; }
  const std::vector<double>& weights() const noexcept { return weights_; }

  NaturalParameter barycenter() const;

 private:
  FamilyPtr family_;
  std::vector<NaturalParameter> thetas_;
  std::vector<double> weights_;
};

struct CccpSettings {
  int max_iterations = 500;
  /// Convergence threshold on the largest coordinate change of an iterate.
  double tolerance = 1e-10;
  /// Halvings toward the previous iterate when an update leaves the domain.
  int max_halvings = 30;
};

struct CccpTrace {
  std::vector<NaturalParameter> iterates;  // starting point first
  std::vector<double> energies;            // weighted mean divergence per iterate
  bool converged = false;
  int iterations = 0;
};

struct CentroidResult {
  NaturalParameter centroid;
  CccpTrace trace;
};

enum class CentroidKind {
  hpd,      // argmin_C sum w_i hpd(theta_i : C)
  hd,       // argmin_C sum w_i hd(theta_i : C)
  sym_hpd,  // argmin_O sum w_i sym_hpd(theta_i, O)
  sym_hd,   // argmin_O sum w_i sym_hd(theta_i, O)
};

struct CentroidProblem {
  CentroidKind kind;
  ConjugatePair pair;
  double gamma = 1.0;  // ignored by the pseudo-divergence kinds
};

/// Weighted mean divergence from the set to `center`.
double centroid_energy(const WeightedSet& set, const CentroidProblem& problem, const NaturalParameter& center);

/// One CCCP update from `current`, before any domain backtracking.
NaturalParameter cccp_step(const WeightedSet& set, const CentroidProblem& problem, const NaturalParameter& current);

/// Runs CCCP from `start`. With `stop_below`, returns as soon as the energy
/// drops strictly below that value (the partial update used by variational
/// k-means).
CentroidResult solve_centroid(const WeightedSet& set, const CentroidProblem& problem, const NaturalParameter& start,
                              const CccpSettings& settings = {}, std::optional<double> stop_below = std::nullopt);

// Right-sided centroids start from the barycenter. Left-sided ones minimize
// the divergence with the centroid as first argument, which by reference
// duality is the right-sided problem at alpha / (alpha - 1).
CentroidResult hd_centroid(const WeightedSet& set, const ConjugatePair& pair, double gamma,
                           const CccpSettings& settings = {});
CentroidResult hpd_centroid(const WeightedSet& set, const ConjugatePair& pair, const CccpSettings& settings = {});
CentroidResult hd_centroid_left(const WeightedSet& set, const ConjugatePair& pair, double gamma,
                                const CccpSettings& settings = {});
CentroidResult hpd_centroid_left(const WeightedSet& set, const ConjugatePair& pair, const CccpSettings& settings = {});
CentroidResult sym_hd_centroid(const WeightedSet& set, const ConjugatePair& pair, double gamma,
                               const CccpSettings& settings = {});
CentroidResult sym_hpd_centroid(const WeightedSet& set, const ConjugatePair& pair, const CccpSettings& settings = {});

/// Weighted mean symmetric proper divergence from the set to `centroid`.
double holder_information(const WeightedSet& set, const ConjugatePair& pair, double gamma,
                          const NaturalParameter& centroid);

}  // namespace holder
