#include "holder/mixture_bounds.hpp"

#include "holder/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace holder {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kProbeSlack = 1e-9;

bool univariate(const ExponentialFamily& family) {
  return family.id() == FamilyId::laplace || (family.id() == FamilyId::gaussian && family.dim() == 2);
}

// Location and scale of a univariate member.
struct Shape {
  double center;
  double scale;
};

Shape shape_of(const ExponentialFamily& family, const NaturalParameter& theta) {
  const SourceParameter source = family.from_natural(theta);
  if (const auto* g = std::get_if<GaussianSource>(&source)) return {g->mean[0], std::sqrt(g->cov(0, 0))};
  if (const auto* l = std::get_if<LaplaceSource>(&source)) return {0.0, l->sigma};
  throw std::invalid_argument(family.name() + " is not a univariate mixture family");
}

// Upper-tail probability of the standard normal, accurate far into the tail.
double normal_upper(double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); }

double gaussian_mass(double mu, double sd, Interval I) {
  const double a = (I.lower - mu) / sd;
  const double b = (I.upper - mu) / sd;
  if (a >= 0.0) return normal_upper(a) - normal_upper(b);
  if (b <= 0.0) return normal_upper(-b) - normal_upper(-a);
  return 1.0 - normal_upper(-a) - normal_upper(b);
}

double laplace_upper(double x, double sigma) {
  // P(X > x) for x >= 0.
  return 0.5 * std::exp(-x / sigma);
}

double laplace_mass(double sigma, Interval I) {
  const double a = I.lower;
  const double b = I.upper;
  if (a >= 0.0) return laplace_upper(a, sigma) - laplace_upper(b, sigma);
  if (b <= 0.0) return laplace_upper(-b, sigma) - laplace_upper(-a, sigma);
  return 1.0 - laplace_upper(-a, sigma) - laplace_upper(b, sigma);
}

// log(w_i p_i(x)) evaluated without allocation.
struct WeightedComponent {
  double log_weight;
  double log_normalizer;
  Eigen::VectorXd coords;
  FamilyId id;

  double log_value(double x) const {
    const double inner = id == FamilyId::laplace ? coords[0] * std::abs(x) : coords[0] * x + coords[1] * x * x;
    return log_weight + inner - log_normalizer;
  }
};

std::vector<WeightedComponent> weighted_components(const Mixture& m) {
  std::vector<WeightedComponent> out;
  out.reserve(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    out.push_back({std::log(m.weights[i]), m.family->log_normalizer(m.components[i]), m.components[i].coords,
                   m.family->id()});
  }
  return out;
}

std::pair<std::size_t, std::size_t> extremes_at(const std::vector<WeightedComponent>& comps, double x) {
  std::size_t hi = 0;
  std::size_t lo = 0;
  double hi_value = comps[0].log_value(x);
  double lo_value = hi_value;
  for (std::size_t i = 1; i < comps.size(); ++i) {
    const double v = comps[i].log_value(x);
    if (v > hi_value) {
      hi_value = v;
      hi = i;
    }
    if (v < lo_value) {
      lo_value = v;
      lo = i;
    }
  }
  return {hi, lo};
}

bool holds_at(const std::vector<WeightedComponent>& comps, double x, std::size_t hi, std::size_t lo) {
  const double top = comps[hi].log_value(x);
  const double bottom = comps[lo].log_value(x);
  for (const auto& c : comps) {
    const double v = c.log_value(x);
    if (v > top + kProbeSlack * std::max(1.0, std::abs(top))) return false;
    if (v < bottom - kProbeSlack * std::max(1.0, std::abs(bottom))) return false;
  }
  return true;
}

// Points where the difference of two weighted log-densities changes
// monotonicity: the vertex of the quadratic (gaussian) or the kink at 0
// (laplace).
std::vector<double> turning_points(const std::vector<WeightedComponent>& comps) {
  std::vector<double> out;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    for (std::size_t j = i + 1; j < comps.size(); ++j) {
      if (comps[i].id == FamilyId::laplace) {
        out.push_back(0.0);
        continue;
      }
      const double quad = comps[i].coords[1] - comps[j].coords[1];
      if (quad != 0.0) out.push_back(-(comps[i].coords[0] - comps[j].coords[0]) / (2.0 * quad));
    }
  }
  return out;
}

double bisect_root(const WeightedComponent& a, const WeightedComponent& b, double lo, double hi, int depth) {
  auto diff = [&](double x) { return a.log_value(x) - b.log_value(x); };
  double f_lo = diff(lo);
  for (int it = 0; it < depth; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = diff(mid);
    if ((f_mid < 0.0) == (f_lo < 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

void append_checked(const std::vector<WeightedComponent>& comps, double lower, double upper, int depth_left,
                    std::vector<ElementaryInterval>& out) {
  const double mid = 0.5 * (lower + upper);
  const auto [hi, lo] = extremes_at(comps, mid);
  if (holds_at(comps, lower, hi, lo) && holds_at(comps, upper, hi, lo)) {
    out.push_back({lower, upper, hi, lo});
    return;
  }
  if (depth_left == 0) {
    throw ConvergenceError("elementary partition: argmax/argmin not separated on [" + std::to_string(lower) + ", " +
                               std::to_string(upper) + "]",
                           upper - lower);
  }
  append_checked(comps, lower, mid, depth_left - 1, out);
  append_checked(comps, mid, upper, depth_left - 1, out);
}

double sup_density(const Mixture& m) {
  double s = 0.0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    const Shape sh = shape_of(*m.family, m.components[i]);
    const double x = sh.center;
    s += m.weights[i] * m.family->density_at(m.components[i], std::span<const double>(&x, 1));
  }
  return s;
}

}  // namespace

Mixture make_mixture(FamilyPtr family, std::vector<double> weights, std::vector<NaturalParameter> components) {
  if (!family) throw std::invalid_argument("mixture without a family");
  if (!univariate(*family)) throw std::invalid_argument("mixtures are supported for gaussian(d=1) and laplace only");
  if (weights.empty() || weights.size() != components.size()) {
    throw std::invalid_argument("mixture needs matching, non-empty weight and component lists");
  }
  double total = 0.0;
  for (double w : weights) {
    if (!(w > 0.0) || !std::isfinite(w)) throw std::invalid_argument("mixture weights must be positive");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) throw std::invalid_argument("mixture weights must sum to 1");
  for (std::size_t i = 0; i < components.size(); ++i) {
    family->check_domain(components[i], "component " + std::to_string(i));
  }
  return {std::move(family), std::move(weights), std::move(components)};
}

double mixture_density(const Mixture& m, double x) {
  double s = 0.0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    s += m.weights[i] * m.family->density_at(m.components[i], std::span<const double>(&x, 1));
  }
  return s;
}

double product_integral(const Mixture& m, const Mixture& other) {
  if (m.family->id() != other.family->id() || m.family->dim() != other.family->dim()) {
    throw std::invalid_argument("product_integral: mixtures of different families");
  }
  const ExponentialFamily& family = *m.family;
  double total = 0.0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    const double fi = family.log_normalizer(m.components[i]);
    for (std::size_t j = 0; j < other.size(); ++j) {
      const NaturalParameter sum = m.components[i] + other.components[j];
      family.check_domain(sum, "theta_" + std::to_string(i) + "+theta'_" + std::to_string(j));
      const double fj = family.log_normalizer(other.components[j]);
      total += m.weights[i] * other.weights[j] * std::exp(family.log_normalizer(sum) - fi - fj);
    }
  }
  return total;
}

double component_interval_mass(const ExponentialFamily& family, const NaturalParameter& theta, Interval interval) {
  if (!(interval.lower < interval.upper)) return 0.0;
  const Shape sh = shape_of(family, theta);
  const double mass = family.id() == FamilyId::laplace ? laplace_mass(sh.scale, interval)
                                                       : gaussian_mass(sh.center, sh.scale, interval);
  return std::clamp(mass, 0.0, 1.0);
}

ElementaryPartition build_partition(const Mixture& m, const PartitionSettings& settings) {
  if (settings.resolution < 1) throw std::invalid_argument("partition resolution must be >= 1");
  if (m.size() == 1) return {{{-kInf, kInf, 0, 0}}, 0.0};

  const auto comps = weighted_components(m);
  const double reach = m.family->id() == FamilyId::laplace ? 30.0 : 7.5;
  double left = kInf;
  double right = -kInf;
  for (const auto& theta : m.components) {
    const Shape sh = shape_of(*m.family, theta);
    left = std::min(left, sh.center - reach * sh.scale);
    right = std::max(right, sh.center + reach * sh.scale);
  }

  double tail = 0.0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    tail += m.weights[i] * (component_interval_mass(*m.family, m.components[i], {-kInf, left}) +
                            component_interval_mass(*m.family, m.components[i], {right, kInf}));
  }
  if (tail >= settings.tail_mass) {
    throw std::logic_error("tail truncation left mass " + std::to_string(tail) + " outside the partition");
  }

  std::vector<double> cuts;
  const double width = (right - left) / settings.resolution;
  for (int c = 0; c <= settings.resolution; ++c) cuts.push_back(left + c * width);
  cuts.back() = right;
  for (double t : turning_points(comps)) {
    if (t > left && t < right) cuts.push_back(t);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  // Each pairwise difference is monotone between consecutive cuts, so a sign
  // change brackets exactly one crossing.
  std::vector<double> crossings;
  for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
    for (std::size_t i = 0; i < comps.size(); ++i) {
      for (std::size_t j = i + 1; j < comps.size(); ++j) {
        const double a = comps[i].log_value(cuts[c]) - comps[j].log_value(cuts[c]);
        const double b = comps[i].log_value(cuts[c + 1]) - comps[j].log_value(cuts[c + 1]);
        if ((a < 0.0) != (b < 0.0) && a != 0.0 && b != 0.0) {
          crossings.push_back(bisect_root(comps[i], comps[j], cuts[c], cuts[c + 1], settings.max_depth));
        }
      }
    }
  }
  cuts.insert(cuts.end(), crossings.begin(), crossings.end());
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  ElementaryPartition partition;
  partition.tail_mass = tail;
  for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
    if (cuts[c + 1] > cuts[c]) append_checked(comps, cuts[c], cuts[c + 1], settings.max_depth, partition.intervals);
  }
  return partition;
}

Bounds power_integral_bounds(const Mixture& m, double alpha, const ElementaryPartition& partition) {
  if (!(alpha >= 1.0) || !std::isfinite(alpha)) throw std::invalid_argument("power_integral_bounds: alpha >= 1 required");
  const ExponentialFamily& family = *m.family;
  const double k = static_cast<double>(m.size());

  std::vector<NaturalParameter> powered;
  std::vector<double> scale;  // w_i^alpha exp(F(alpha theta_i) - alpha F(theta_i))
  for (std::size_t i = 0; i < m.size(); ++i) {
    NaturalParameter p = alpha * m.components[i];
    family.check_domain(p, "alpha*theta_" + std::to_string(i));
    scale.push_back(std::pow(m.weights[i], alpha) *
                    std::exp(family.log_normalizer(p) - alpha * family.log_normalizer(m.components[i])));
    powered.push_back(std::move(p));
  }

  const double k_alpha = std::pow(k, alpha);
  double lower = 0.0;
  double upper = 0.0;
  for (const auto& I : partition.intervals) {
    const Interval span{I.lower, I.upper};
    const double top = scale[I.dominant] * component_interval_mass(family, powered[I.dominant], span);
    const double bottom = scale[I.dominated] * component_interval_mass(family, powered[I.dominated], span);
    lower += std::max(k_alpha * bottom, top);
    upper += k_alpha * top;
  }
  if (partition.tail_mass > 0.0) upper += std::pow(sup_density(m), alpha - 1.0) * partition.tail_mass;
  return {lower, upper};
}

Bounds hpd_mixture_bounds(const Mixture& m, const Mixture& other, const ConjugatePair& pair,
                          const PartitionSettings& settings) {
  require_forward(pair, "hpd_mixture_bounds");
  const double cross = std::log(product_integral(m, other));
  const Bounds p = power_integral_bounds(m, pair.alpha(), build_partition(m, settings));
  const Bounds q = power_integral_bounds(other, pair.beta(), build_partition(other, settings));
  return {-cross + std::log(p.lower) / pair.alpha() + std::log(q.lower) / pair.beta(),
          -cross + std::log(p.upper) / pair.alpha() + std::log(q.upper) / pair.beta()};
}

}  // namespace holder
