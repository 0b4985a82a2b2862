#include "holder/centroids.hpp"

#include "holder/closed_form.hpp"
#include "holder/error.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace holder {

namespace {

constexpr int kInnerMaxIterations = 100;
constexpr double kInnerTolerance = 1e-10;

double divergence_to(const ExponentialFamily& family, const CentroidProblem& problem, const NaturalParameter& theta,
                     const NaturalParameter& center) {
  switch (problem.kind) {
    case CentroidKind::hpd:
      return hpd_closed(family, theta, center, problem.pair);
    case CentroidKind::hd:
      return hd_closed(family, theta, center, problem.pair, problem.gamma);
    case CentroidKind::sym_hpd:
      return sym_hpd_closed(family, theta, center, problem.pair);
    case CentroidKind::sym_hd:
      return sym_hd_closed(family, theta, center, problem.pair, problem.gamma);
  }
  throw std::logic_error("unknown centroid kind");
}

// Every natural combination the update and the energy evaluate at `center`.
bool feasible(const WeightedSet& set, const CentroidProblem& problem, const NaturalParameter& center) {
  const ExponentialFamily& family = set.family();
  const double a = problem.pair.alpha();
  const double b = problem.pair.beta();
  const double g = problem.gamma;
  switch (problem.kind) {
    case CentroidKind::hpd:
      if (!family.in_domain(b * center)) return false;
      for (const auto& t : set.thetas()) {
        if (!family.in_domain(t + center)) return false;
      }
      return true;
    case CentroidKind::hd:
      if (!family.in_domain(g * center)) return false;
      for (const auto& t : set.thetas()) {
        if (!family.in_domain(combine(g / a, t, g / b, center))) return false;
      }
      return true;
    case CentroidKind::sym_hpd:
      if (!family.in_domain(a * center) || !family.in_domain(b * center)) return false;
      for (const auto& t : set.thetas()) {
        if (!family.in_domain(t + center)) return false;
      }
      return true;
    case CentroidKind::sym_hd:
      if (!family.in_domain(g * center)) return false;
      for (const auto& t : set.thetas()) {
        if (!family.in_domain(combine(g / a, t, g / b, center))) return false;
        if (!family.in_domain(combine(g / b, t, g / a, center))) return false;
      }
      return true;
  }
  return false;
}

// Solves (1/2) gradF(alpha O) + (1/2) gradF(beta O) = target by damped Newton
// on the convex potential (1/(2 alpha)) F(alpha O) + (1/(2 beta)) F(beta O) - <target, O>.
NaturalParameter solve_sym_hpd_inner(const ExponentialFamily& family, const ConjugatePair& pair,
                                     const Eigen::VectorXd& target, const NaturalParameter& start) {
  const double a = pair.alpha();
  const double b = pair.beta();
  auto potential = [&](const NaturalParameter& o) {
    return family.log_normalizer(a * o) / (2.0 * a) + family.log_normalizer(b * o) / (2.0 * b) - target.dot(o.coords);
  };
  auto residual_at = [&](const NaturalParameter& o) -> Eigen::VectorXd {
    return 0.5 * family.grad_log_normalizer(a * o) + 0.5 * family.grad_log_normalizer(b * o) - target;
  };
  auto admissible = [&](const NaturalParameter& o) { return family.in_domain(a * o) && family.in_domain(b * o); };

  const double scale = std::max(1.0, target.lpNorm<Eigen::Infinity>());
  NaturalParameter o = start;
  if (!admissible(o)) throw DomainError(family.name(), "symmetric HPD inner solve: start point outside the domain");
  double value = potential(o);
  Eigen::VectorXd residual = residual_at(o);
  for (int it = 0; it < kInnerMaxIterations; ++it) {
    if (residual.lpNorm<Eigen::Infinity>() < kInnerTolerance * scale) return o;
    const Eigen::MatrixXd hessian =
        0.5 * a * family.hessian_log_normalizer(a * o) + 0.5 * b * family.hessian_log_normalizer(b * o);
    const Eigen::VectorXd step = hessian.ldlt().solve(-residual);
    const double slope = residual.dot(step);
    double t = 1.0;
    bool accepted = false;
    for (int h = 0; h < 60; ++h, t *= 0.5) {
      NaturalParameter trial{o.family, o.coords + t * step};
      if (!admissible(trial)) continue;
      const double trial_value = potential(trial);
      if (trial_value <= value + 1e-4 * t * slope || t * step.lpNorm<Eigen::Infinity>() < 1e-15) {
        o = std::move(trial);
        value = trial_value;
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
    residual = residual_at(o);
  }
  const double r = residual.lpNorm<Eigen::Infinity>();
  if (r < kInnerTolerance * scale) return o;
  throw ConvergenceError("symmetric HPD inner solve did not converge", r);
}

}  // namespace

WeightedSet::WeightedSet(FamilyPtr family, std::vector<NaturalParameter> thetas, std::vector<double> weights)
    : family_(std::move(family)), thetas_(std::move(thetas)), weights_(std::move(weights)) {
  if (!family_) throw std::invalid_argument("weighted set without a family");
  if (thetas_.empty()) throw std::invalid_argument("weighted set needs at least one parameter");
  if (weights_.empty()) weights_.assign(thetas_.size(), 1.0);
  if (weights_.size() != thetas_.size()) throw std::invalid_argument("weighted set: weight count mismatch");
  double total = 0.0;
  for (double w : weights_) {
    if (!(w > 0.0) || !std::isfinite(w)) throw std::invalid_argument("weighted set: weights must be positive");
    total += w;
  }
  for (double& w : weights_) w /= total;
  for (std::size_t i = 0; i < thetas_.size(); ++i) family_->check_domain(thetas_[i], "theta_" + std::to_string(i));
}

NaturalParameter WeightedSet::barycenter() const {
  NaturalParameter c{family_->id(), Eigen::VectorXd::Zero(family_->dim())};
  for (std::size_t i = 0; i < thetas_.size(); ++i) c.coords += weights_[i] * thetas_[i].coords;
  return c;
}

double centroid_energy(const WeightedSet& set, const CentroidProblem& problem, const NaturalParameter& center) {
  double e = 0.0;
  for (std::size_t i = 0; i < set.size(); ++i) {
    e += set.weights()[i] * divergence_to(set.family(), problem, set.thetas()[i], center);
  }
  return e;
}

NaturalParameter cccp_step(const WeightedSet& set, const CentroidProblem& problem, const NaturalParameter& current) {
  const ExponentialFamily& family = set.family();
  const double a = problem.pair.alpha();
  const double b = problem.pair.beta();
  const double g = problem.gamma;
  Eigen::VectorXd eta = Eigen::VectorXd::Zero(family.dim());

  switch (problem.kind) {
    case CentroidKind::hpd:
      for (std::size_t i = 0; i < set.size(); ++i) {
        eta += set.weights()[i] * family.grad_log_normalizer(set.thetas()[i] + current);
      }
      return family.inv_grad_log_normalizer(eta) / b;
    case CentroidKind::hd:
      for (std::size_t i = 0; i < set.size(); ++i) {
        eta += set.weights()[i] * family.grad_log_normalizer(combine(g / a, set.thetas()[i], g / b, current));
      }
      return family.inv_grad_log_normalizer(eta) / g;
    case CentroidKind::sym_hd:
      for (std::size_t i = 0; i < set.size(); ++i) {
        const auto& t = set.thetas()[i];
        eta += set.weights()[i] * (family.grad_log_normalizer(combine(g / a, t, g / b, current)) / b +
                                   family.grad_log_normalizer(combine(g / b, t, g / a, current)) / a);
      }
      return family.inv_grad_log_normalizer(eta) / g;
    case CentroidKind::sym_hpd:
      for (std::size_t i = 0; i < set.size(); ++i) {
        eta += set.weights()[i] * family.grad_log_normalizer(set.thetas()[i] + current);
      }
      if (a == 2.0 && b == 2.0) return family.inv_grad_log_normalizer(eta) / 2.0;
      return solve_sym_hpd_inner(family, problem.pair, eta, current);
  }
  throw std::logic_error("unknown centroid kind");
}

CentroidResult solve_centroid(const WeightedSet& set, const CentroidProblem& problem, const NaturalParameter& start,
                              const CccpSettings& settings, std::optional<double> stop_below) {
  require_forward(problem.pair, "centroid");
  if (!(problem.gamma > 0.0)) throw std::invalid_argument("centroid: gamma must be > 0");
  if (!feasible(set, problem, start)) {
    throw DomainError(set.family().name(), "centroid start point leaves the domain of a required combination");
  }

  CentroidResult result{start, {}};
  CccpTrace& trace = result.trace;
  NaturalParameter current = start;
  trace.iterates.push_back(current);
  trace.energies.push_back(centroid_energy(set, problem, current));
  if (stop_below && trace.energies.back() < *stop_below) {
    trace.converged = true;
    result.centroid = current;
    return result;
  }

  for (int it = 1; it <= settings.max_iterations; ++it) {
    NaturalParameter next = cccp_step(set, problem, current);
    int halvings = 0;
    while (!feasible(set, problem, next)) {
      if (++halvings > settings.max_halvings) {
        throw DomainError(set.family().name(), "CCCP iterate " + std::to_string(it) + " left the domain after " +
                                                   std::to_string(settings.max_halvings) + " halvings");
      }
      next = combine(0.5, next, 0.5, current);
    }
    const double moved = max_abs_diff(next, current);
    current = std::move(next);
    trace.iterates.push_back(current);
    trace.energies.push_back(centroid_energy(set, problem, current));
    trace.iterations = it;
    if (moved < settings.tolerance) {
      trace.converged = true;
      break;
    }
    if (stop_below && trace.energies.back() < *stop_below) {
      trace.converged = true;
      break;
    }
  }
  result.centroid = current;
  return result;
}

CentroidResult hd_centroid(const WeightedSet& set, const ConjugatePair& pair, double gamma,
                           const CccpSettings& settings) {
  return solve_centroid(set, {CentroidKind::hd, pair, gamma}, set.barycenter(), settings);
}

CentroidResult hpd_centroid(const WeightedSet& set, const ConjugatePair& pair, const CccpSettings& settings) {
  return solve_centroid(set, {CentroidKind::hpd, pair, 1.0}, set.barycenter(), settings);
}

CentroidResult hd_centroid_left(const WeightedSet& set, const ConjugatePair& pair, double gamma,
                                const CccpSettings& settings) {
  return hd_centroid(set, pair.dual(), gamma, settings);
}

CentroidResult hpd_centroid_left(const WeightedSet& set, const ConjugatePair& pair, const CccpSettings& settings) {
  return hpd_centroid(set, pair.dual(), settings);
}

CentroidResult sym_hd_centroid(const WeightedSet& set, const ConjugatePair& pair, double gamma,
                               const CccpSettings& settings) {
  return solve_centroid(set, {CentroidKind::sym_hd, pair, gamma}, set.barycenter(), settings);
}

CentroidResult sym_hpd_centroid(const WeightedSet& set, const ConjugatePair& pair, const CccpSettings& settings) {
  return solve_centroid(set, {CentroidKind::sym_hpd, pair, 1.0}, set.barycenter(), settings);
}

double holder_information(const WeightedSet& set, const ConjugatePair& pair, double gamma,
                          const NaturalParameter& centroid) {
  return centroid_energy(set, {CentroidKind::sym_hd, pair, gamma}, centroid);
}

}  // namespace holder
