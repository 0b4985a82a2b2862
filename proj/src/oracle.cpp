#include "holder/oracle.hpp"

#include "holder/error.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace holder {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTightTolerance = 1e-8;

// p^a with the conventions 0^a = 0 for a > 0 and x^0 = 1.
double power_term(double x, double a) {
  if (a == 0.0) return 1.0;
  if (x == 0.0) {
    if (a < 0.0) throw std::domain_error("negative exponent applied to a zero density value");
    return 0.0;
  }
  return std::pow(x, a);
}

double log_power_term(double x, double a) {
  if (a == 0.0) return 0.0;
  if (x == 0.0) {
    if (a < 0.0) throw std::domain_error("negative exponent applied to a zero density value");
    return -kInf;
  }
  return a * std::log(x);
}

// log sum_i p_i^a q_i^b, accumulated in log space so very large exponents
// (the alpha -> infinity limit) do not underflow.
double log_integral(const DiscreteDensity& p, const DiscreteDensity& q, double a, double b) {
  if (p.size() != q.size()) throw std::invalid_argument("discrete densities have different supports");
  std::vector<double> terms;
  terms.reserve(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double t = log_power_term(p[i], a) + log_power_term(q[i], b);
    if (t > -kInf) terms.push_back(t);
  }
  if (terms.empty()) return -kInf;
  const double top = *std::max_element(terms.begin(), terms.end());
  double s = 0.0;
  for (double t : terms) s += std::exp(t - top);
  return top + std::log(s);
}

std::vector<double> merged_breakpoints(const Density1D& p, const Density1D& q) {
  std::vector<double> out = p.breakpoints;
  out.insert(out.end(), q.breakpoints.begin(), q.breakpoints.end());
  return out;
}

Interval common_support(const Density1D& p, const Density1D& q) {
  return {std::max(p.support.lower, q.support.lower), std::min(p.support.upper, q.support.upper)};
}

double log_integral(const Density1D& p, const Density1D& q, double a, double b) {
  const std::vector<double> cuts = merged_breakpoints(p, q);
  // An exponent of zero means the factor is absent, so integrate over the
  // other density's support only.
  Interval support = common_support(p, q);
  if (a == 0.0) support = q.support;
  if (b == 0.0) support = p.support;
  const double value = quadrature(
      [&](double x) {
        const double pv = a == 0.0 ? 1.0 : p.eval(x);
        const double qv = b == 0.0 ? 1.0 : q.eval(x);
        return power_term(pv, a) * power_term(qv, b);
      },
      support, cuts);
  return std::log(value);
}

double checked(double log_value, const char* what) {
  if (std::isnan(log_value) || log_value == -kInf) {
    throw std::domain_error(std::string(what) + " integral vanishes");
  }
  if (log_value == kInf) throw std::domain_error(std::string(what) + " integral diverges");
  return log_value;
}

template <class Density>
double hpd_impl(const Density& p, const Density& q, const ConjugatePair& pair) {
  require_forward(pair, "hpd_direct");
  const double cross = checked(log_integral(p, q, 1.0, 1.0), "cross");
  const double norm_p = checked(log_integral(p, q, pair.alpha(), 0.0), "p^alpha");
  const double norm_q = checked(log_integral(p, q, 0.0, pair.beta()), "q^beta");
  return -(cross - norm_p / pair.alpha() - norm_q / pair.beta());
}

// Written so that swapping p and q gives the same floating-point result.
template <class Density>
double cs_impl(const Density& p, const Density& q) {
  const double cross = checked(log_integral(p, q, 1.0, 1.0), "cross");
  const double norm_p = checked(log_integral(p, q, 2.0, 0.0), "p^2");
  const double norm_q = checked(log_integral(p, q, 0.0, 2.0), "q^2");
  return 0.5 * (norm_p + norm_q) - cross;
}

template <class Density>
double hd_impl(const Density& p, const Density& q, const ConjugatePair& pair, double gamma) {
  require_forward(pair, "hd_direct");
  if (!(gamma > 0.0)) throw std::invalid_argument("hd_direct: gamma must be > 0");
  const double a = pair.alpha();
  const double b = pair.beta();
  const double cross = checked(log_integral(p, q, gamma / a, gamma / b), "cross");
  const double norm_p = checked(log_integral(p, q, gamma, 0.0), "p^gamma");
  const double norm_q = checked(log_integral(p, q, 0.0, gamma), "q^gamma");
  return -(cross - norm_p / a - norm_q / b);
}

template <class Density>
double skew_impl(const Density& p, const Density& q, double lambda) {
  if (!(lambda > 0.0 && lambda < 1.0)) throw std::invalid_argument("skew Bhattacharyya: lambda must be in (0,1)");
  return -checked(log_integral(p, q, lambda, 1.0 - lambda), "skew");
}

// Sup of a 1D density: scan panels between breakpoints, then golden-section
// refinement around the best sample.
double sup_1d(const Density1D& d) {
  std::vector<double> marks;
  for (double b : d.breakpoints) {
    if (b >= d.support.lower && b <= d.support.upper) marks.push_back(b);
  }
  if (std::isfinite(d.support.lower)) marks.push_back(d.support.lower);
  if (std::isfinite(d.support.upper)) marks.push_back(d.support.upper);
  if (marks.empty()) marks.push_back(0.0);
  std::sort(marks.begin(), marks.end());
  marks.erase(std::unique(marks.begin(), marks.end()), marks.end());

  std::vector<double> xs;
  for (std::size_t i = 0; i + 1 < marks.size(); ++i) {
    for (int k = 0; k < 64; ++k) xs.push_back(marks[i] + (marks[i + 1] - marks[i]) * k / 64.0);
  }
  xs.push_back(marks.back());

  std::size_t best = 0;
  double best_value = -1.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double v = d.eval(xs[i]);
    if (!std::isfinite(v)) throw std::domain_error("density is unbounded; the sup-norm term is undefined");
    if (v > best_value) {
      best_value = v;
      best = i;
    }
  }
  double lo = xs[best == 0 ? 0 : best - 1];
  double hi = xs[std::min(best + 1, xs.size() - 1)];
  const double ratio = 0.5 * (std::sqrt(5.0) - 1.0);
  for (int it = 0; it < 200 && hi - lo > 1e-14 * std::max(1.0, std::abs(lo)); ++it) {
    const double m1 = hi - ratio * (hi - lo);
    const double m2 = lo + ratio * (hi - lo);
    if (d.eval(m1) < d.eval(m2)) {
      lo = m1;
    } else {
      hi = m2;
    }
  }
  const double refined = d.eval(0.5 * (lo + hi));
  if (!std::isfinite(refined)) throw std::domain_error("density is unbounded; the sup-norm term is undefined");
  return std::max(best_value, refined);
}

double total_mass(const DiscreteDensity& p) {
  double s = 0.0;
  for (double w : p.weights()) s += w;
  return s;
}

double sup_value(const DiscreteDensity& p) { return *std::max_element(p.weights().begin(), p.weights().end()); }

double total_mass(const Density1D& p) { return quadrature(p.eval, p.support, p.breakpoints); }

double sup_value(const Density1D& p) { return sup_1d(p); }

template <class Density>
double limit_impl(const Density& p, const Density& q, HolderLimit which) {
  const double cross = checked(log_integral(p, q, 1.0, 1.0), "cross");
  if (which == HolderLimit::alpha_to_one) {
    return -cross + std::log(total_mass(p)) + std::log(sup_value(q));
  }
  return -cross + std::log(sup_value(p)) + std::log(total_mass(q));
}

std::vector<double> scaled_marks(double center, double scale, std::initializer_list<double> multiples) {
  std::vector<double> out{center};
  for (double m : multiples) {
    out.push_back(center - m * scale);
    out.push_back(center + m * scale);
  }
  return out;
}

}  // namespace

DiscreteDensity::DiscreteDensity(std::vector<double> weights) : weights_(std::move(weights)) {
  bool positive = false;
  for (double w : weights_) {
    if (!std::isfinite(w) || w < 0.0) throw std::invalid_argument("discrete density weights must be finite and >= 0");
    positive = positive || w > 0.0;
  }
  if (!positive) throw std::invalid_argument("discrete density needs a strictly positive entry");
}

double hpd_direct(const DiscreteDensity& p, const DiscreteDensity& q, const ConjugatePair& pair) {
  return hpd_impl(p, q, pair);
}
double hpd_direct(const Density1D& p, const Density1D& q, const ConjugatePair& pair) { return hpd_impl(p, q, pair); }

double hd_direct(const DiscreteDensity& p, const DiscreteDensity& q, const ConjugatePair& pair, double gamma) {
  return hd_impl(p, q, pair, gamma);
}
double hd_direct(const Density1D& p, const Density1D& q, const ConjugatePair& pair, double gamma) {
  return hd_impl(p, q, pair, gamma);
}

double cs_direct(const DiscreteDensity& p, const DiscreteDensity& q) { return cs_impl(p, q); }
double cs_direct(const Density1D& p, const Density1D& q) { return cs_impl(p, q); }

double skew_bhattacharyya_direct(const DiscreteDensity& p, const DiscreteDensity& q, double lambda) {
  return skew_impl(p, q, lambda);
}
double skew_bhattacharyya_direct(const Density1D& p, const Density1D& q, double lambda) {
  return skew_impl(p, q, lambda);
}

double kl_direct(const DiscreteDensity& p, const DiscreteDensity& q) {
  if (p.size() != q.size()) throw std::invalid_argument("discrete densities have different supports");
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0.0) continue;
    if (q[i] == 0.0) return kInf;
    s += p[i] * std::log(p[i] / q[i]);
  }
  return std::max(s, 0.0);
}

double kl_direct(const Density1D& p, const Density1D& q) {
  bool escapes = false;
  const Interval support = p.support;
  const double value = quadrature(
      [&](double x) {
        const double pv = p.eval(x);
        if (pv == 0.0) return 0.0;
        const double qv = (x < q.support.lower || x > q.support.upper) ? 0.0 : q.eval(x);
        if (qv == 0.0) {
          escapes = true;
          return 0.0;
        }
        return pv * (std::log(pv) - std::log(qv));
      },
      support, merged_breakpoints(p, q));
  if (escapes) return kInf;
  return std::max(value, 0.0);
}

double hpd_limit(const DiscreteDensity& p, const DiscreteDensity& q, HolderLimit which) {
  return limit_impl(p, q, which);
}
double hpd_limit(const Density1D& p, const Density1D& q, HolderLimit which) { return limit_impl(p, q, which); }

HolderCheck holder_inequality_check(const DiscreteDensity& p, const DiscreteDensity& q, const ConjugatePair& pair) {
  if (p.size() != q.size()) throw std::invalid_argument("discrete densities have different supports");
  const double a = pair.alpha();
  const double b = pair.beta();
  const HolderRegime regime = pair.forward() ? HolderRegime::forward : HolderRegime::reverse;
  if (!pair.forward() && !pair.reverse()) throw std::invalid_argument("exponents are in neither Hoelder regime");
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (a < 0.0 && p[i] == 0.0) throw std::domain_error("p^alpha undefined: alpha < 0 and p has a zero entry");
    if (b < 0.0 && q[i] == 0.0) throw std::domain_error("q^beta undefined: beta < 0 and q has a zero entry");
  }
  const double cross = checked(log_integral(p, q, 1.0, 1.0), "cross");
  const double norm_p = checked(log_integral(p, q, a, 0.0), "p^alpha");
  const double norm_q = checked(log_integral(p, q, 0.0, b), "q^beta");
  const double ratio = std::exp(cross - norm_p / a - norm_q / b);

  // p^alpha = c q^beta: compare alpha log p - beta log q across the support.
  bool tight = true;
  double lo = kInf;
  double hi = -kInf;
  for (std::size_t i = 0; i < p.size() && tight; ++i) {
    const bool p_zero = p[i] == 0.0;
    const bool q_zero = q[i] == 0.0;
    if (p_zero && q_zero) continue;
    if (p_zero != q_zero) {
      tight = false;
      break;
    }
    const double r = a * std::log(p[i]) - b * std::log(q[i]);
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  if (tight && lo <= hi) tight = hi - lo <= kTightTolerance;
  return {ratio, regime, tight};
}

DiscreteDensity discrete_density(const ExponentialFamily& family, const NaturalParameter& theta) {
  const SourceParameter source = family.from_natural(theta);
  if (const auto* b = std::get_if<BernoulliSource>(&source)) return DiscreteDensity({1.0 - b->p1, b->p1});
  if (const auto* c = std::get_if<CategoricalSource>(&source)) {
    return DiscreteDensity(std::vector<double>(c->probs.data(), c->probs.data() + c->probs.size()));
  }
  throw std::invalid_argument(family.name() + " is not a finite-support family");
}

Density1D density_1d(const ExponentialFamily& family, const NaturalParameter& theta) {
  const SourceParameter source = family.from_natural(theta);
  const double pi = boost::math::constants::pi<double>();
  if (const auto* g = std::get_if<GaussianSource>(&source); g && g->mean.size() == 1) {
    const double mu = g->mean[0];
    const double sd = std::sqrt(g->cov(0, 0));
    const double norm = 1.0 / (sd * std::sqrt(2.0 * pi));
    Density1D d;
    d.eval = [mu, sd, norm](double x) {
      const double z = (x - mu) / sd;
      return norm * std::exp(-0.5 * z * z);
    };
    d.breakpoints = scaled_marks(mu, sd, {0.25, 0.5, 1, 2, 3, 5, 8, 12, 20, 35});
    return d;
  }
  if (const auto* l = std::get_if<LaplaceSource>(&source)) {
    const double s = l->sigma;
    Density1D d;
    d.eval = [s](double x) { return std::exp(-std::abs(x) / s) / (2.0 * s); };
    d.breakpoints = scaled_marks(0.0, s, {0.1, 0.3, 1, 3, 10, 30, 100});
    return d;
  }
  if (const auto* w = std::get_if<WishartSource>(&source); w && w->scale.rows() == 1) {
    // d = 1: a Gamma density with shape n/2 and scale 2S.
    const double shape = 0.5 * w->dof;
    const double scale = 2.0 * w->scale(0, 0);
    const double log_norm = -boost::math::lgamma(shape) - shape * std::log(scale);
    Density1D d;
    d.support = {0.0, kInf};
    d.eval = [shape, scale, log_norm](double x) {
      if (x <= 0.0) return 0.0;
      return std::exp(log_norm + (shape - 1.0) * std::log(x) - x / scale);
    };
    const double mean = shape * scale;
    for (double m : {1e-3, 1e-2, 0.1, 0.3, 0.5, 1.0, 1.5, 2.0, 4.0, 8.0, 16.0, 40.0, 100.0}) {
      d.breakpoints.push_back(m * mean);
    }
    return d;
  }
  throw std::invalid_argument(family.name() + " has no one-dimensional oracle density");
}

}  // namespace holder
