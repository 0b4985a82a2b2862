#pragma once

// Closed-form Hoelder divergences between members of one conic or affine
// exponential family, written entirely in terms of the log-normalizer.
//
// Every function validates the natural-parameter combinations its formula
// evaluates before touching F, so an out-of-domain request fails with a
// DomainError naming the combination (e.g. "beta*theta_q").
//
// Results in [-1e-10, 0) are rounding noise and are returned as 0; anything
// more negative throws std::domain_error.

#include "holder/conjugate_pair.hpp"
#include "holder/exp_family.hpp"

#include <optional>

namespace holder {

struct DivergenceRequest {
  FamilyPtr family;
  NaturalParameter theta_p;
  NaturalParameter theta_q;
  ConjugatePair pair;
  std::optional<double> gamma;
};

/// (1/alpha) F(alpha theta_p) + (1/beta) F(beta theta_q) - F(theta_p + theta_q).
double hpd_closed(const ExponentialFamily& family, const NaturalParameter& theta_p, const NaturalParameter& theta_q,
                  const ConjugatePair& pair);
double hpd_closed(const DivergenceRequest& request);

/// (1/alpha) F(gamma theta_p) + (1/beta) F(gamma theta_q)
///   - F((gamma/alpha) theta_p + (gamma/beta) theta_q).
double hd_closed(const ExponentialFamily& family, const NaturalParameter& theta_p, const NaturalParameter& theta_q,
                 const ConjugatePair& pair, double gamma);
/// Requires request.gamma.
double hd_closed(const DivergenceRequest& request);

/// Cauchy-Schwarz divergence. hpd_closed at alpha = 2 and hd_closed at
/// alpha = gamma = 2 route here, so the three agree bit for bit.
double cs_closed(const ExponentialFamily& family, const NaturalParameter& theta_p, const NaturalParameter& theta_q);

/// Arithmetic mean of hpd_closed(p:q) and hpd_closed(q:p).
double sym_hpd_closed(const ExponentialFamily& family, const NaturalParameter& theta_p,
                      const NaturalParameter& theta_q, const ConjugatePair& pair);
double sym_hd_closed(const ExponentialFamily& family, const NaturalParameter& theta_p,
                     const NaturalParameter& theta_q, const ConjugatePair& pair, double gamma);

/// lambda F(theta_p) + (1 - lambda) F(theta_q) - F(lambda theta_p + (1 - lambda) theta_q).
double skew_bhattacharyya_closed(const ExponentialFamily& family, const NaturalParameter& theta_p,
                                 const NaturalParameter& theta_q, double lambda);

/// Pseudo-divergence between the escorts of p (at alpha) and q (at beta).
double escort_divergence(const ExponentialFamily& family, const NaturalParameter& theta_p,
                         const NaturalParameter& theta_q, const ConjugatePair& pair);

/// Both sides of the two pre-aim identities:
///   hpd(theta_p / (alpha - 1) : theta_q; alpha) == hd(theta_p : theta_q; alpha, gamma = beta)
///   hpd(theta_q : (alpha - 1) theta_p; alpha)   == hd(theta_p : theta_q; beta, gamma = alpha)
struct PreAimCheck {
  double powered_lhs;
  double powered_rhs;
  double reversed_lhs;
  double reversed_rhs;
};

PreAimCheck pre_aim_check(const ExponentialFamily& family, const NaturalParameter& theta_p,
                          const NaturalParameter& theta_q, const ConjugatePair& pair);

/// The categorical member q with hpd(c : q; alpha) = 0: c^(alpha-1) renormalized.
/// `center` is a full probability vector strictly inside the simplex.
Eigen::VectorXd hpd_minimizer_categorical(const Eigen::VectorXd& center, double alpha);

/// (1/alpha)(F(alpha theta_1) - F(alpha theta_2)) - (F(theta_1 + theta) - F(theta_2 + theta)),
/// which equals hpd(theta_1 : theta) - hpd(theta_2 : theta) and vanishes on the bisector.
double hpd_bisector_residual(const ExponentialFamily& family, const NaturalParameter& theta_1,
                             const NaturalParameter& theta_2, const NaturalParameter& theta,
                             const ConjugatePair& pair);

/// Whether alpha theta_p - beta theta_q lies in the natural parameter space.
bool holder_equality_reachable(const ExponentialFamily& family, const NaturalParameter& theta_p,
                               const NaturalParameter& theta_q, const ConjugatePair& pair);

}  // namespace holder
