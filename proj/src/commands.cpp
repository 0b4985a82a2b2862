#include "holder/commands.hpp"

#include "holder/centroids.hpp"
#include "holder/closed_form.hpp"
#include "holder/clustering.hpp"
#include "holder/error.hpp"
#include "holder/json_io.hpp"
#include "holder/mixture_bounds.hpp"
#include "holder/oracle.hpp"
#include "holder/rng.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace holder {

namespace {

std::string short_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

double require_alpha(const std::optional<double>& alpha, const char* variant) {
  if (!alpha) throw std::invalid_argument(std::string("--alpha is required for variant ") + variant);
  if (!(*alpha > 1.0) || !std::isfinite(*alpha)) {
    throw std::invalid_argument("alpha > 1 required (got " + short_number(*alpha) + ")");
  }
  return *alpha;
}

double require_gamma(const std::optional<double>& gamma, const char* variant) {
  if (!gamma) throw std::invalid_argument(std::string("--gamma is required for variant ") + variant);
  if (!(*gamma > 0.0) || !std::isfinite(*gamma)) throw std::invalid_argument("gamma > 0 required");
  return *gamma;
}

bool finite_support(const ExponentialFamily& family) {
  return family.id() == FamilyId::categorical || family.id() == FamilyId::bernoulli;
}

DiscreteDensity powered(const DiscreteDensity& d, double exponent) {
  std::vector<double> w(d.weights().begin(), d.weights().end());
  for (double& x : w) x = std::pow(x, exponent);
  return DiscreteDensity(std::move(w));
}

Density1D powered(const Density1D& d, double exponent) {
  Density1D out = d;
  out.eval = [f = d.eval, exponent](double x) { return std::pow(f(x), exponent); };
  return out;
}

template <class Density>
double oracle_value(const std::string& variant, const Density& p, const Density& q, double alpha, double gamma) {
  const ConjugatePair pair(alpha);
  if (variant == "hpd") return hpd_direct(p, q, pair);
  if (variant == "hd") return hd_direct(p, q, pair, gamma);
  if (variant == "sym-hpd") return 0.5 * (hpd_direct(p, q, pair) + hpd_direct(q, p, pair));
  if (variant == "sym-hd") return 0.5 * (hd_direct(p, q, pair, gamma) + hd_direct(q, p, pair, gamma));
  if (variant == "cs") return cs_direct(p, q);
  if (variant == "escort") return hpd_direct(powered(p, 1.0 / pair.alpha()), powered(q, 1.0 / pair.beta()), pair);
  if (variant == "bhat") return skew_bhattacharyya_direct(p, q, 1.0 / alpha);
  throw std::invalid_argument("unknown variant " + variant);
}

double divergence_oracle(const std::string& variant, const ExponentialFamily& family, const NaturalParameter& tp,
                         const NaturalParameter& tq, double alpha, double gamma) {
  if (finite_support(family)) {
    return oracle_value(variant, discrete_density(family, tp), discrete_density(family, tq), alpha, gamma);
  }
  return oracle_value(variant, density_1d(family, tp), density_1d(family, tq), alpha, gamma);
}

// KL(p:q) as the Bregman divergence of F between the natural parameters.
double kl_closed(const ExponentialFamily& family, const NaturalParameter& tp, const NaturalParameter& tq) {
  const Eigen::VectorXd eta = family.grad_log_normalizer(tp);
  const double value = family.log_normalizer(tq) - family.log_normalizer(tp) - (tq.coords - tp.coords).dot(eta);
  return std::max(value, 0.0);
}

Density1D mixture_density_1d(const Mixture& m) {
  Density1D d;
  d.eval = [&m](double x) { return mixture_density(m, x); };
  for (const auto& theta : m.components) {
    const SourceParameter s = m.family->from_natural(theta);
    double center = 0.0;
    double scale = 1.0;
    if (const auto* g = std::get_if<GaussianSource>(&s)) {
      center = g->mean[0];
      scale = std::sqrt(g->cov(0, 0));
    } else if (const auto* l = std::get_if<LaplaceSource>(&s)) {
      scale = l->sigma;
    }
    for (double k : {0.0, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0}) {
      d.breakpoints.push_back(center - k * scale);
      d.breakpoints.push_back(center + k * scale);
    }
  }
  return d;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace

CommandResult run_command(const std::function<std::string()>& body) {
  auto failure = [](const char* kind, const std::string& message) {
    return CommandResult{dump(Json{{"error", kind}, {"message", message}}), 1};
  };
  try {
    return {body(), 0};
  } catch (const DomainError& e) {
    return failure("domain", e.what());
  } catch (const ConvergenceError& e) {
    return failure("convergence", e.what());
  } catch (const IntegrationError& e) {
    return failure("integration", e.what());
  } catch (const Json::exception& e) {
    return failure("parse", e.what());
  } catch (const std::invalid_argument& e) {
    return failure("validation", e.what());
  } catch (const std::exception& e) {
    return failure("runtime", e.what());
  }
}

std::string cmd_div(const DivOptions& o) {
  const std::string& v = o.variant;
  double alpha = 2.0;
  double gamma = 1.0;
  if (v == "hpd" || v == "sym-hpd" || v == "escort") {
    alpha = require_alpha(o.alpha, v.c_str());
  } else if (v == "hd" || v == "sym-hd") {
    alpha = require_alpha(o.alpha, v.c_str());
    gamma = require_gamma(o.gamma, v.c_str());
  } else if (v == "bhat") {
    alpha = o.alpha ? require_alpha(o.alpha, "bhat") : 2.0;
  } else if (v != "cs") {
    throw std::invalid_argument("unknown variant " + v);
  }

  const Json input = read_json_file(o.input);
  const Distribution p = parse_distribution(input.at("p"));
  const Distribution q = parse_distribution(input.at("q"));
  if (p.family->name() != q.family->name()) {
    throw std::invalid_argument("p and q belong to different families: " + p.family->name() + " vs " +
                                q.family->name());
  }
  const ExponentialFamily& family = *p.family;
  const ConjugatePair pair(alpha);

  double value = 0.0;
  if (v == "hpd") value = hpd_closed(family, p.theta, q.theta, pair);
  if (v == "hd") value = hd_closed(family, p.theta, q.theta, pair, gamma);
  if (v == "sym-hpd") value = sym_hpd_closed(family, p.theta, q.theta, pair);
  if (v == "sym-hd") value = sym_hd_closed(family, p.theta, q.theta, pair, gamma);
  if (v == "cs") value = cs_closed(family, p.theta, q.theta);
  if (v == "escort") value = escort_divergence(family, p.theta, q.theta, pair);
  if (v == "bhat") value = skew_bhattacharyya_closed(family, p.theta, q.theta, 1.0 / alpha);

  Json out{{"value", number_to_json(value)}, {"variant", v}, {"alpha", alpha}};
  out["gamma"] = (v == "hd" || v == "sym-hd") ? Json(gamma) : Json(nullptr);
  if (o.oracle) out["oracle_value"] = number_to_json(divergence_oracle(v, family, p.theta, q.theta, alpha, gamma));
  return dump(out);
}

std::string cmd_grid(const GridOptions& o) {
  if (o.resolution < 8) throw std::invalid_argument("resolution must be >= 8");
  for (double a : o.alphas) require_alpha(a, "grid");
  for (double g : o.gammas) require_gamma(g, "grid");
  const ConjugatePair cs_pair(2.0);

  std::ostringstream csv;
  auto header_tail = [&] {
    for (double a : o.alphas) csv << ",hpd_alpha=" << short_number(a);
    for (double g : o.gammas) csv << ",hd_alpha=2_gamma=" << short_number(g);
    csv << ",kl\n";
  };

  if (o.figure == "simplex") {
    Eigen::VectorXd reference = Eigen::VectorXd::Constant(3, 1.0 / 3.0);
    if (!o.reference.empty()) {
      if (o.reference.size() != 3) throw std::invalid_argument("simplex reference needs three probabilities");
      reference = Eigen::Map<const Eigen::VectorXd>(o.reference.data(), 3);
    }
    const FamilyPtr family = make_categorical(2);
    const NaturalParameter ref_theta = family->to_natural(CategoricalSource{reference});
    const DiscreteDensity ref_density({reference[0], reference[1], reference[2]});

    csv << "p0,p1,p2";
    header_tail();
    const int r = o.resolution;
    for (int i = 0; i <= r; ++i) {
      for (int j = 0; i + j <= r; ++j) {
        const int k = r - i - j;
        const double p0 = static_cast<double>(i) / r;
        const double p1 = static_cast<double>(j) / r;
        const double p2 = static_cast<double>(k) / r;
        csv << format_number(p0) << ',' << format_number(p1) << ',' << format_number(p2);
        const bool boundary = i == 0 || j == 0 || k == 0;
        if (boundary) {
          const DiscreteDensity cell({p0, p1, p2});
          for (double a : o.alphas) csv << ',' << format_number(hpd_direct(ref_density, cell, ConjugatePair(a)));
          for (double g : o.gammas) csv << ',' << format_number(hd_direct(ref_density, cell, cs_pair, g));
          csv << ',' << format_number(kl_direct(ref_density, cell)) << '\n';
        } else {
          Eigen::Vector3d probs(p0, p1, p2);
          probs /= probs.sum();
          const NaturalParameter theta = family->to_natural(CategoricalSource{probs});
          for (double a : o.alphas) csv << ',' << format_number(hpd_closed(*family, ref_theta, theta, ConjugatePair(a)));
          for (double g : o.gammas) csv << ',' << format_number(hd_closed(*family, ref_theta, theta, cs_pair, g));
          csv << ',' << format_number(kl_closed(*family, ref_theta, theta)) << '\n';
        }
      }
    }
    return csv.str();
  }

  if (o.figure == "gaussian") {
    double mu_r = 0.0;
    double sd_r = 1.0;
    if (!o.reference.empty()) {
      if (o.reference.size() != 2) throw std::invalid_argument("gaussian reference needs mean and standard deviation");
      mu_r = o.reference[0];
      sd_r = o.reference[1];
    }
    const FamilyPtr family = make_gaussian(1);
    auto natural = [&](double mu, double sd) {
      return family->to_natural(GaussianSource{Eigen::VectorXd::Constant(1, mu), Eigen::MatrixXd::Constant(1, 1, sd * sd)});
    };
    const NaturalParameter ref_theta = natural(mu_r, sd_r);

    csv << "mu,sigma";
    header_tail();
    const int r = o.resolution;
    for (int i = 0; i <= r; ++i) {
      const double mu = mu_r - 3.0 * sd_r + 6.0 * sd_r * i / r;
      for (int j = 1; j <= r; ++j) {
        const double sd = 3.0 * sd_r * j / r;
        const NaturalParameter theta = natural(mu, sd);
        csv << format_number(mu) << ',' << format_number(sd);
        for (double a : o.alphas) csv << ',' << format_number(hpd_closed(*family, ref_theta, theta, ConjugatePair(a)));
        for (double g : o.gammas) csv << ',' << format_number(hd_closed(*family, ref_theta, theta, cs_pair, g));
        csv << ',' << format_number(kl_closed(*family, ref_theta, theta)) << '\n';
      }
    }
    return csv.str();
  }
  throw std::invalid_argument("unknown figure " + o.figure + " (expected simplex or gaussian)");
}

std::string cmd_centroid(const CentroidOptions& o) {
  const std::string& v = o.variant;
  const double alpha = require_alpha(o.alpha, v.c_str());
  const bool proper = v == "hd" || v == "sym-hd" || v == "left-hd";
  const double gamma = proper ? require_gamma(o.gamma, v.c_str()) : 1.0;
  const WeightedSet set = parse_weighted_set(read_json_file(o.input));
  const ConjugatePair pair(alpha);

  CentroidResult result = [&] {
    if (v == "hpd") return hpd_centroid(set, pair);
    if (v == "hd") return hd_centroid(set, pair, gamma);
    if (v == "sym-hpd") return sym_hpd_centroid(set, pair);
    if (v == "sym-hd") return sym_hd_centroid(set, pair, gamma);
    if (v == "left-hpd") return hpd_centroid_left(set, pair);
    if (v == "left-hd") return hd_centroid_left(set, pair, gamma);
    throw std::invalid_argument("unknown variant " + v);
  }();

  Json energies = Json::array();
  for (double e : result.trace.energies) energies.push_back(number_to_json(e));
  Json out{{"variant", v},
           {"alpha", alpha},
           {"gamma", proper ? Json(gamma) : Json(nullptr)},
           {"centroid", distribution_to_json(set.family(), result.centroid)},
           {"trace",
            {{"iterations", result.trace.iterations},
             {"converged", result.trace.converged},
             {"energies", energies}}}};
  return dump(out);
}

std::string cmd_cluster(const ClusterOptions& o) {
  if (!o.seed) throw std::invalid_argument("--seed is required");
  const double alpha = require_alpha(o.alpha, "cluster");
  const double gamma = o.gamma ? require_gamma(o.gamma, "cluster") : alpha;
  if (o.input.empty() == !o.toy_n.has_value()) {
    throw std::invalid_argument("give exactly one of --input or --toy-n");
  }

  FamilyPtr family;
  std::vector<NaturalParameter> points;
  std::vector<int> truth;
  if (o.toy_n) {
    ToyDatasetConfig config;
    config.n = *o.toy_n;
    config.seed = derive_seed(*o.seed, 0);
    const ToyDataset data = generate_toy_dataset(config);
    family = make_gaussian(2);
    for (const auto& g : data.gaussians) points.push_back(family->to_natural(g));
    truth = data.true_labels;
  } else {
    const WeightedSet set = parse_weighted_set(read_json_file(o.input));
    family = set.family_ptr();
    points = set.thetas();
  }

  KMeansSettings settings;
  settings.variational = !o.full_centroids;
  const ClusteringState state =
      kmeans(family, points, o.clusters, ConjugatePair(alpha), gamma, derive_seed(*o.seed, 1), settings);

  Json centers = Json::array();
  for (const auto& c : state.centers) centers.push_back(distribution_to_json(*family, c));
  Json trace = Json::array();
  for (double e : state.energy_trace) trace.push_back(number_to_json(e));
  Json out{{"alpha", alpha},
           {"gamma", gamma},
           {"labels", state.labels},
           {"energy", number_to_json(state.energy)},
           {"rounds", state.iterations},
           {"converged", state.converged},
           {"energy_trace", trace},
           {"centers", centers}};
  if (!truth.empty()) {
    out["true_labels"] = truth;
    if (o.clusters == 2) out["accuracy"] = accuracy(state.labels, truth);
  }
  return dump(out);
}

std::string cmd_table1(const Table1Options& o) {
  if (!o.seed) throw std::invalid_argument("--seed is required");
  if (o.runs < 1) throw std::invalid_argument("--runs must be >= 1");
  std::ostringstream csv;
  csv << "n";
  for (double a : o.alphas) csv << ",alpha=gamma=" << short_number(a);
  csv << '\n';
  for (int n : o.sizes) {
    csv << n;
    for (double a : o.alphas) {
      const ExperimentResult r = run_experiment(n, ConjugatePair(require_alpha(a, "table1")), a, o.runs, *o.seed);
      char cell[64];
      std::snprintf(cell, sizeof cell, "%.1f±%.1f", 100.0 * r.mean_accuracy, 100.0 * r.std_accuracy);
      csv << ',' << cell;
    }
    csv << '\n';
  }
  return csv.str();
}

std::string cmd_bounds(const BoundsOptions& o) {
  const double alpha = require_alpha(o.alpha, "bounds");
  const Mixture m = parse_mixture(read_json_file(o.first));
  const Mixture other = parse_mixture(read_json_file(o.second));
  PartitionSettings settings;
  settings.resolution = o.resolution;
  const ConjugatePair pair(alpha);
  const Bounds b = hpd_mixture_bounds(m, other, pair, settings);
  const double reference = hpd_direct(mixture_density_1d(m), mixture_density_1d(other), pair);
  return dump(Json{{"alpha", alpha},
                   {"lower", number_to_json(b.lower)},
                   {"upper", number_to_json(b.upper)},
                   {"quadrature_reference", number_to_json(reference)}});
}

}  // namespace holder
