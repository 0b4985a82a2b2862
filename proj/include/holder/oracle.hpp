#pragma once

// Definition-level divergence evaluation: exact sums on finite supports and
// adaptive quadrature on the line. These routines never look at a family's
// log-normalizer combinations and serve as ground truth for the closed forms.

#include "holder/conjugate_pair.hpp"
#include "holder/exp_family.hpp"
#include "holder/quadrature.hpp"

#include <functional>
#include <limits>
#include <span>
#include <vector>

namespace holder {

/// Nonnegative weights over a finite support, not necessarily normalized.
class DiscreteDensity {
 public:
  explicit DiscreteDensity(std::vector<double> weights);

  std::span<const double> weights() const noexcept { return weights_; }
  std::size_t size() const noexcept { return weights_.size(); }
  double operator[](std::size_t i) const { return weights_[i]; }

 private:
  std::vector<double> weights_;
};

/// A nonnegative function on an interval of the real line.
struct Density1D {
  std::function<double(double)> eval;
  Interval support{-std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  /// Panel boundaries handed to the integrator (modes, kinks, scale marks).
  std::vector<double> breakpoints;
};

// Hoelder pseudo-divergence -log( <p,q> / (||p||_alpha ||q||_beta) ).
double hpd_direct(const DiscreteDensity& p, const DiscreteDensity& q, const ConjugatePair& pair);
double hpd_direct(const Density1D& p, const Density1D& q, const ConjugatePair& pair);

// Proper Hoelder divergence: the pseudo-divergence between p^(gamma/alpha)
// and q^(gamma/beta).
double hd_direct(const DiscreteDensity& p, const DiscreteDensity& q, const ConjugatePair& pair, double gamma);
double hd_direct(const Density1D& p, const Density1D& q, const ConjugatePair& pair, double gamma);

double cs_direct(const DiscreteDensity& p, const DiscreteDensity& q);
double cs_direct(const Density1D& p, const Density1D& q);

/// KL(p:q) for normalized inputs; +infinity when q vanishes where p does not.
double kl_direct(const DiscreteDensity& p, const DiscreteDensity& q);
double kl_direct(const Density1D& p, const Density1D& q);

/// -log sum p^lambda q^(1-lambda), lambda in (0,1).
double skew_bhattacharyya_direct(const DiscreteDensity& p, const DiscreteDensity& q, double lambda);
double skew_bhattacharyya_direct(const Density1D& p, const Density1D& q, double lambda);

enum class HolderLimit { alpha_to_one, alpha_to_inf };

/// Limits of the pseudo-divergence at alpha -> 1+ and alpha -> infinity:
/// -log<p,q> + log||p||_1 + log max q, and -log<p,q> + log max p + log||q||_1.
double hpd_limit(const DiscreteDensity& p, const DiscreteDensity& q, HolderLimit which);
double hpd_limit(const Density1D& p, const Density1D& q, HolderLimit which);

enum class HolderRegime { forward, reverse };

struct HolderCheck {
  double ratio;  // <p,q> / (||p||_alpha ||q||_beta)
  HolderRegime regime;
  bool tight;  // p^alpha proportional to q^beta
};

HolderCheck holder_inequality_check(const DiscreteDensity& p, const DiscreteDensity& q, const ConjugatePair& pair);

/// Probability vector of a categorical or Bernoulli member.
DiscreteDensity discrete_density(const ExponentialFamily& family, const NaturalParameter& theta);
/// Density on the line (gaussian d=1, laplace) or the half-line (wishart d=1),
/// with breakpoints at the mode and a spread of scale marks.
Density1D density_1d(const ExponentialFamily& family, const NaturalParameter& theta);

}  // namespace holder
