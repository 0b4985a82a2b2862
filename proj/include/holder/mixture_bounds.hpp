#pragma once

// Univariate mixtures of one exponential family (gaussian d=1 or laplace):
// the exact integral of a product of two mixtures, and two-sided bounds on
// the integral of a mixture raised to a power, obtained by sandwiching the
// mixture between its dominant and dominated weighted components on
// intervals where both stay fixed.

#include "holder/conjugate_pair.hpp"
#include "holder/exp_family.hpp"
#include "holder/quadrature.hpp"

#include <cstddef>
#include <vector>

namespace holder {

struct Mixture {
  FamilyPtr family;
  std::vector<double> weights;
  std::vector<NaturalParameter> components;

  std::size_t size() const noexcept { return weights.size(); }
};

/// Validates a univariate family, positive weights summing to 1 (to 1e-12)
/// and in-domain components.
Mixture make_mixture(FamilyPtr family, std::vector<double> weights, std::vector<NaturalParameter> components);

double mixture_density(const Mixture& m, double x);

/// Sum_ij w_i w'_j exp(F(theta_i + theta'_j) - F(theta_i) - F(theta'_j)).
double product_integral(const Mixture& m, const Mixture& other);

/// Probability that the member at theta assigns to `interval`.
double component_interval_mass(const ExponentialFamily& family, const NaturalParameter& theta, Interval interval);

struct ElementaryInterval {
  double lower;
  double upper;
  std::size_t dominant;   // argmax_i w_i p_i on the interval
  std::size_t dominated;  // argmin_i w_i p_i on the interval
};

struct ElementaryPartition {
  std::vector<ElementaryInterval> intervals;
  /// Mixture mass outside the covered range.
  double tail_mass = 0.0;
};

struct PartitionSettings {
  /// Number of uniform cells laid over the truncated support before the
  /// component crossings are inserted. Doubling it nests the partitions.
  int resolution = 16;
  double tail_mass = 1e-12;
  /// Bisection steps per crossing, and halvings allowed when an interval
  /// fails its argmax/argmin probe.
  int max_depth = 60;
};

/// Splits the support into intervals with a constant argmax and argmin.
/// A single component yields one interval covering the whole line.
ElementaryPartition build_partition(const Mixture& m, const PartitionSettings& settings = {});

struct Bounds {
  double lower;
  double upper;
};

/// Bounds on the integral of m(x)^alpha, alpha >= 1.
Bounds power_integral_bounds(const Mixture& m, double alpha, const ElementaryPartition& partition);

/// Bounds on the pseudo-divergence between two mixtures, from the exact
/// product integral and the power-integral bounds at alpha (for m) and beta
/// (for m').
Bounds hpd_mixture_bounds(const Mixture& m, const Mixture& other, const ConjugatePair& pair,
                          const PartitionSettings& settings = {});

}  // namespace holder
