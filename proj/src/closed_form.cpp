#include "holder/closed_form.hpp"

#include "holder/error.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <utility>

namespace holder {

namespace {

constexpr double kNegativeSlack = 1e-10;

using Requirement = std::pair<const char*, const NaturalParameter*>;

void preflight(const ExponentialFamily& family, std::initializer_list<Requirement> required) {
  for (const auto& [label, theta] : required) family.check_domain(*theta, label);
}

// `scale` is the largest |F| term in the formula; cancellation error grows
// with it.
double settle(double value, double scale, const char* op) {
  if (std::isnan(value)) throw std::domain_error(std::string(op) + ": result is NaN");
  if (value >= 0.0) return value;
  if (value >= -kNegativeSlack * std::max(1.0, scale)) return 0.0;
  throw std::domain_error(std::string(op) + ": negative result " + std::to_string(value));
}

double magnitude(std::initializer_list<double> terms) {
  double m = 0.0;
  for (double t : terms) m = std::max(m, std::abs(t));
  return m;
}

bool is_cs(const ConjugatePair& pair) { return pair.alpha() == 2.0 && pair.beta() == 2.0; }

void check_same_family(const ExponentialFamily& family, const NaturalParameter& a, const NaturalParameter& b) {
  if (a.family != family.id() || b.family != family.id()) {
    throw std::invalid_argument("natural parameters do not belong to " + family.name());
  }
}

}  // namespace

double cs_closed(const ExponentialFamily& family, const NaturalParameter& theta_p, const NaturalParameter& theta_q) {
  check_same_family(family, theta_p, theta_q);
  const NaturalParameter doubled_p = 2.0 * theta_p;
  const NaturalParameter doubled_q = 2.0 * theta_q;
  const NaturalParameter sum = theta_p + theta_q;
  preflight(family, {{"2*theta_p", &doubled_p}, {"2*theta_q", &doubled_q}, {"theta_p+theta_q", &sum}});
  const double fp = family.log_normalizer(doubled_p);
  const double fq = family.log_normalizer(doubled_q);
  const double fs = family.log_normalizer(sum);
  return settle(0.5 * fp + 0.5 * fq - fs, magnitude({fp, fq, fs}), "cs_closed");
}

double hpd_closed(const ExponentialFamily& family, const NaturalParameter& theta_p, const NaturalParameter& theta_q,
                  const ConjugatePair& pair) {
  require_forward(pair, "hpd_closed");
  if (is_cs(pair)) return cs_closed(family, theta_p, theta_q);
  check_same_family(family, theta_p, theta_q);
  const double a = pair.alpha();
  const double b = pair.beta();
  const NaturalParameter scaled_p = a * theta_p;
  const NaturalParameter scaled_q = b * theta_q;
  const NaturalParameter sum = theta_p + theta_q;
  preflight(family, {{"alpha*theta_p", &scaled_p}, {"beta*theta_q", &scaled_q}, {"theta_p+theta_q", &sum}});
  const double fp = family.log_normalizer(scaled_p);
  const double fq = family.log_normalizer(scaled_q);
  const double fs = family.log_normalizer(sum);
  return settle(fp / a + fq / b - fs, magnitude({fp, fq, fs}), "hpd_closed");
}

double hpd_closed(const DivergenceRequest& request) {
  if (!request.family) throw std::invalid_argument("divergence request without a family");
  return hpd_closed(*request.family, request.theta_p, request.theta_q, request.pair);
}

double hd_closed(const ExponentialFamily& family, const NaturalParameter& theta_p, const NaturalParameter& theta_q,
                 const ConjugatePair& pair, double gamma) {
  require_forward(pair, "hd_closed");
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw std::invalid_argument("hd_closed: gamma must be > 0");
  if (is_cs(pair) && gamma == 2.0) return cs_closed(family, theta_p, theta_q);
  check_same_family(family, theta_p, theta_q);
  const double a = pair.alpha();
  const double b = pair.beta();
  const NaturalParameter powered_p = gamma * theta_p;
  const NaturalParameter powered_q = gamma * theta_q;
  const NaturalParameter mixed = combine(gamma / a, theta_p, gamma / b, theta_q);
  preflight(family, {{"gamma*theta_p", &powered_p},
                     {"gamma*theta_q", &powered_q},
                     {"(gamma/alpha)*theta_p+(gamma/beta)*theta_q", &mixed}});
  const double fp = family.log_normalizer(powered_p);
  const double fq = family.log_normalizer(powered_q);
  const double fm = family.log_normalizer(mixed);
  return settle(fp / a + fq / b - fm, magnitude({fp, fq, fm}), "hd_closed");
}

double hd_closed(const DivergenceRequest& request) {
  if (!request.family) throw std::invalid_argument("divergence request without a family");
  if (!request.gamma) throw std::invalid_argument("hd_closed: request has no gamma");
  return hd_closed(*request.family, request.theta_p, request.theta_q, request.pair, *request.gamma);
}

double sym_hpd_closed(const ExponentialFamily& family, const NaturalParameter& theta_p,
                      const NaturalParameter& theta_q, const ConjugatePair& pair) {
  require_forward(pair, "sym_hpd_closed");
  if (is_cs(pair)) return cs_closed(family, theta_p, theta_q);
  check_same_family(family, theta_p, theta_q);
  const double a = pair.alpha();
  const double b = pair.beta();
  const NaturalParameter ap = a * theta_p;
  const NaturalParameter bp = b * theta_p;
  const NaturalParameter aq = a * theta_q;
  const NaturalParameter bq = b * theta_q;
  const NaturalParameter sum = theta_p + theta_q;
  preflight(family, {{"alpha*theta_p", &ap},
                     {"beta*theta_p", &bp},
                     {"alpha*theta_q", &aq},
                     {"beta*theta_q", &bq},
                     {"theta_p+theta_q", &sum}});
  const double f_ap = family.log_normalizer(ap);
  const double f_bp = family.log_normalizer(bp);
  const double f_aq = family.log_normalizer(aq);
  const double f_bq = family.log_normalizer(bq);
  const double fs = family.log_normalizer(sum);
  const double powers = f_ap / a + f_bp / b + f_aq / a + f_bq / b;
  return settle(0.5 * powers - fs, magnitude({f_ap, f_bp, f_aq, f_bq, fs}), "sym_hpd_closed");
}

double sym_hd_closed(const ExponentialFamily& family, const NaturalParameter& theta_p,
                     const NaturalParameter& theta_q, const ConjugatePair& pair, double gamma) {
  require_forward(pair, "sym_hd_closed");
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw std::invalid_argument("sym_hd_closed: gamma must be > 0");
  if (is_cs(pair) && gamma == 2.0) return cs_closed(family, theta_p, theta_q);
  check_same_family(family, theta_p, theta_q);
  const double ga = gamma / pair.alpha();
  const double gb = gamma / pair.beta();
  const NaturalParameter powered_p = gamma * theta_p;
  const NaturalParameter powered_q = gamma * theta_q;
  const NaturalParameter forward = combine(ga, theta_p, gb, theta_q);
  const NaturalParameter backward = combine(gb, theta_p, ga, theta_q);
  preflight(family, {{"gamma*theta_p", &powered_p},
                     {"gamma*theta_q", &powered_q},
                     {"(gamma/alpha)*theta_p+(gamma/beta)*theta_q", &forward},
                     {"(gamma/beta)*theta_p+(gamma/alpha)*theta_q", &backward}});
  const double fp = family.log_normalizer(powered_p);
  const double fq = family.log_normalizer(powered_q);
  const double ff = family.log_normalizer(forward);
  const double fb = family.log_normalizer(backward);
  return settle(0.5 * (fp + fq - ff - fb), magnitude({fp, fq, ff, fb}), "sym_hd_closed");
}

double skew_bhattacharyya_closed(const ExponentialFamily& family, const NaturalParameter& theta_p,
                                 const NaturalParameter& theta_q, double lambda) {
  if (!(lambda > 0.0 && lambda < 1.0)) throw std::invalid_argument("skew_bhattacharyya_closed: lambda must be in (0,1)");
  check_same_family(family, theta_p, theta_q);
  const NaturalParameter mixed = combine(lambda, theta_p, 1.0 - lambda, theta_q);
  preflight(family, {{"theta_p", &theta_p}, {"theta_q", &theta_q}, {"lambda*theta_p+(1-lambda)*theta_q", &mixed}});
  const double fp = family.log_normalizer(theta_p);
  const double fq = family.log_normalizer(theta_q);
  const double fm = family.log_normalizer(mixed);
  return settle(lambda * fp + (1.0 - lambda) * fq - fm, magnitude({fp, fq, fm}), "skew_bhattacharyya_closed");
}

double escort_divergence(const ExponentialFamily& family, const NaturalParameter& theta_p,
                         const NaturalParameter& theta_q, const ConjugatePair& pair) {
  require_forward(pair, "escort_divergence");
  const NaturalParameter escort_p = family.escort_natural(theta_p, pair.alpha());
  const NaturalParameter escort_q = family.escort_natural(theta_q, pair.beta());
  return hpd_closed(family, escort_p, escort_q, pair);
}

PreAimCheck pre_aim_check(const ExponentialFamily& family, const NaturalParameter& theta_p,
                          const NaturalParameter& theta_q, const ConjugatePair& pair) {
  require_forward(pair, "pre_aim_check");
  const double a = pair.alpha();
  PreAimCheck out{};
  out.powered_lhs = hpd_closed(family, theta_p / (a - 1.0), theta_q, pair);
  out.powered_rhs = hd_closed(family, theta_p, theta_q, pair, pair.beta());
  out.reversed_lhs = hpd_closed(family, theta_q, (a - 1.0) * theta_p, pair);
  out.reversed_rhs = hd_closed(family, theta_p, theta_q, pair.dual(), a);
  return out;
}

Eigen::VectorXd hpd_minimizer_categorical(const Eigen::VectorXd& center, double alpha) {
  const ConjugatePair pair(alpha);
  require_forward(pair, "hpd_minimizer_categorical");
  if (center.size() < 2) throw std::invalid_argument("hpd_minimizer_categorical: need at least two outcomes");
  for (double c : center) {
    if (!(c > 0.0 && c < 1.0)) {
      throw std::domain_error("hpd_minimizer_categorical: center must lie strictly inside the simplex");
    }
  }
  if (std::abs(center.sum() - 1.0) > 1e-12) {
    throw std::invalid_argument("hpd_minimizer_categorical: center must sum to 1");
  }
  const Eigen::VectorXd powered = center.array().pow(alpha - 1.0).matrix();
  return powered / powered.sum();
}

double hpd_bisector_residual(const ExponentialFamily& family, const NaturalParameter& theta_1,
                             const NaturalParameter& theta_2, const NaturalParameter& theta,
                             const ConjugatePair& pair) {
  require_forward(pair, "hpd_bisector_residual");
  check_same_family(family, theta_1, theta_2);
  check_same_family(family, theta, theta);
  const double a = pair.alpha();
  const NaturalParameter a1 = a * theta_1;
  const NaturalParameter a2 = a * theta_2;
  const NaturalParameter s1 = theta_1 + theta;
  const NaturalParameter s2 = theta_2 + theta;
  preflight(family, {{"alpha*theta_1", &a1}, {"alpha*theta_2", &a2}, {"theta_1+theta", &s1}, {"theta_2+theta", &s2}});
  const double lhs = (family.log_normalizer(a1) - family.log_normalizer(a2)) / a;
  const double rhs = family.log_normalizer(s1) - family.log_normalizer(s2);
  return lhs - rhs;
}

bool holder_equality_reachable(const ExponentialFamily& family, const NaturalParameter& theta_p,
                               const NaturalParameter& theta_q, const ConjugatePair& pair) {
  check_same_family(family, theta_p, theta_q);
  return family.in_domain(combine(pair.alpha(), theta_p, -pair.beta(), theta_q));
}

}  // namespace holder
