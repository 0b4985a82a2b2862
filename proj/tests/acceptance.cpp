// Acceptance suite: one PASS/FAIL line per criterion.
//
//   acceptance                          run everything, exit 1 on any failure
//   acceptance 1 5 8                    run a subset
//   acceptance --allow-known-failures   criterion 7 may fail without failing the run

#include "holder/centroids.hpp"
#include "holder/closed_form.hpp"
#include "holder/clustering.hpp"
#include "holder/commands.hpp"
#include "holder/mixture_bounds.hpp"
#include "holder/oracle.hpp"
#include "test_util.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace holder;
using holder::testing::Random;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Outcome {
  bool pass = true;
  std::string detail;
  std::vector<std::string> notes;
};

// Collects failures without stopping, so every line reports its worst case.
class Checker {
 public:
  void expect(bool ok, const std::string& what) {
    ++checks_;
    if (!ok) {
      ++failures_;
      if (messages_.size() < 8) messages_.push_back(what);
    }
  }
  void worst(double& slot, double value) { slot = std::max(slot, value); }
  long checks() const { return checks_; }
  long failures() const { return failures_; }
  const std::vector<std::string>& messages() const { return messages_; }

 private:
  long checks_ = 0;
  long failures_ = 0;
  std::vector<std::string> messages_;
};

std::string fmt(const char* format, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, x);
  return buf;
}

Outcome finish(const Checker& c, std::string detail) {
  Outcome o;
  o.pass = c.failures() == 0;
  o.detail = std::move(detail) + ", " + std::to_string(c.checks()) + " checks";
  if (!o.pass) o.detail += ", " + std::to_string(c.failures()) + " failed";
  o.notes = c.messages();
  return o;
}

struct FamilyCase {
  FamilyId id;
  int dim;
};

// ---------------------------------------------------------------------------

Outcome oracle_equivalence() {
  const double alphas[] = {1.1, 1.5, 2.0, 4.0, 10.0};
  const double gammas[] = {0.5, 1.0, 2.0, 5.0, 10.0};
  Random rng(1001);
  Checker c;
  double max_error = 0.0;
  const FamilyId ids[] = {FamilyId::categorical, FamilyId::bernoulli, FamilyId::gaussian, FamilyId::laplace,
                          FamilyId::wishart};
  for (FamilyId id : ids) {
    for (int pair_index = 0; pair_index < 200; ++pair_index) {
      const int dim = id == FamilyId::categorical ? rng.integer(1, 5) : 1;
      const FamilyPtr family = testing::family_of(id, dim);
      const NaturalParameter tp = family->to_natural(rng.source(id, dim));
      const NaturalParameter tq = family->to_natural(rng.source(id, dim));
      const bool discrete = id == FamilyId::categorical || id == FamilyId::bernoulli;
      auto hpd_oracle = [&](const ConjugatePair& pair) {
        return discrete ? hpd_direct(discrete_density(*family, tp), discrete_density(*family, tq), pair)
                        : hpd_direct(density_1d(*family, tp), density_1d(*family, tq), pair);
      };
      auto hd_oracle = [&](const ConjugatePair& pair, double gamma) {
        return discrete ? hd_direct(discrete_density(*family, tp), discrete_density(*family, tq), pair, gamma)
                        : hd_direct(density_1d(*family, tp), density_1d(*family, tq), pair, gamma);
      };
      for (double alpha : alphas) {
        const ConjugatePair pair(alpha);
        const double err = std::abs(hpd_closed(*family, tp, tq, pair) - hpd_oracle(pair));
        c.worst(max_error, err);
        c.expect(err < 1e-6, family->name() + " hpd alpha=" + fmt("%g", alpha) + " error " + fmt("%.3g", err));
      }
      for (std::size_t g = 0; g < std::size(gammas); ++g) {
        const ConjugatePair pair(alphas[(g + static_cast<std::size_t>(pair_index)) % std::size(alphas)]);
        const double err = std::abs(hd_closed(*family, tp, tq, pair, gammas[g]) - hd_oracle(pair, gammas[g]));
        c.worst(max_error, err);
        c.expect(err < 1e-6, family->name() + " hd gamma=" + fmt("%g", gammas[g]) + " error " + fmt("%.3g", err));
      }
    }
  }
  return finish(c, "max |closed - oracle| " + fmt("%.2e", max_error));
}

// ---------------------------------------------------------------------------

Outcome identity_suite() {
  Random rng(2002);
  Checker c;
  double max_error = 0.0;
  auto near = [&](double a, double b, const std::string& what) {
    const double err = std::abs(a - b);
    c.worst(max_error, err);
    c.expect(err <= 1e-10, what + " differs by " + fmt("%.3g", err));
  };
  const FamilyCase cases[] = {{FamilyId::categorical, 3}, {FamilyId::bernoulli, 1}, {FamilyId::gaussian, 1},
                              {FamilyId::gaussian, 2},    {FamilyId::laplace, 1},   {FamilyId::wishart, 1}};

  for (int trial = 0; trial < 100; ++trial) {
    // Projectivity of the definition on unnormalized vectors.
    const int n = rng.integer(2, 8);
    const Eigen::VectorXd p = rng.positive_vector(n, 0.05, 5.0);
    const Eigen::VectorXd q = rng.positive_vector(n, 0.05, 5.0);
    const double s = rng.log_uniform(1e-3, 1e3), t = rng.log_uniform(1e-3, 1e3);
    const ConjugatePair pair(rng.uniform(1.1, 10.0));
    const double gamma = rng.uniform(0.5, 5.0);
    const DiscreteDensity dp(testing::to_std(p)), dq(testing::to_std(q));
    const DiscreteDensity sp(testing::to_std(s * p)), tq(testing::to_std(t * q));
    near(hpd_direct(sp, tq, pair), hpd_direct(dp, dq, pair), "projectivity (hpd)");
    near(hd_direct(sp, tq, pair, gamma), hd_direct(dp, dq, pair, gamma), "projectivity (hd)");

    for (const auto& fc : cases) {
      const FamilyPtr family = testing::family_of(fc.id, fc.dim);
      const std::string name = family->name();
      const NaturalParameter tp = family->to_natural(rng.source(fc.id, fc.dim));
      const NaturalParameter tq2 = family->to_natural(rng.source(fc.id, fc.dim));
      const double alpha = rng.uniform(1.1, 10.0);
      const ConjugatePair ab(alpha);
      const ConjugatePair ba = ab.dual();
      const double beta = ab.beta();

      near(hpd_closed(*family, tp, tq2, ab), hpd_closed(*family, tq2, tp, ba), name + " reference duality (hpd)");
      near(hd_closed(*family, tp, tq2, ab, gamma), hd_closed(*family, tq2, tp, ba, gamma),
           name + " reference duality (hd)");

      const ConjugatePair two(2.0);
      const double cs = cs_closed(*family, tp, tq2);
      near(hd_closed(*family, tp, tq2, two, 2.0), cs, name + " hd(2,2) = cs");
      near(hpd_closed(*family, tp, tq2, two), cs, name + " hpd(2) = cs");

      const double bhat = skew_bhattacharyya_closed(*family, tp, tq2, 1.0 / alpha);
      near(hd_closed(*family, tp, tq2, ab, 1.0), bhat, name + " hd(gamma=1) = skew Bhattacharyya");
      near(escort_divergence(*family, tp, tq2, ab), bhat, name + " escort = skew Bhattacharyya");

      // Pre-aim: p^(1/(alpha-1)) and p^(alpha-1) have natural parameters
      // theta_p/(alpha-1) and (alpha-1) theta_p.
      near(hpd_closed(*family, tp / (alpha - 1.0), tq2, ab), hd_closed(*family, tp, tq2, ab, beta),
           name + " pre-aim (powered)");
      near(hpd_closed(*family, tq2, (alpha - 1.0) * tp, ab), hd_closed(*family, tp, tq2, ba, alpha),
           name + " pre-aim (reversed)");

      near(hpd_closed(*family, tp, (alpha - 1.0) * tp, ab), 0.0, name + " hpd zero at (alpha-1) theta");
      near(hd_closed(*family, tp, tp, ab, gamma), 0.0, name + " hd zero on the diagonal");

      if (fc.id == FamilyId::laplace) {
        const double base = hd_closed(*family, tp, tq2, ab, 1.0);
        for (double g : {0.5, 2.0, 5.0, 10.0}) near(hd_closed(*family, tp, tq2, ab, g), base, "laplace hd gamma-free");
      }
    }
  }
  return finish(c, "max deviation " + fmt("%.2e", max_error));
}

// ---------------------------------------------------------------------------

Outcome holder_inequality() {
  Random rng(3003);
  Checker c;
  double forward_max = 0.0, reverse_min = kInf;
  for (int trial = 0; trial < 10000; ++trial) {
    const int n = rng.integer(2, 10);
    const DiscreteDensity p(testing::to_std(rng.positive_vector(n)));
    const DiscreteDensity q(testing::to_std(rng.positive_vector(n)));

    const ConjugatePair forward(rng.uniform(1.05, 20.0));
    const HolderCheck f = holder_inequality_check(p, q, forward);
    forward_max = std::max(forward_max, f.ratio);
    c.expect(f.regime == HolderRegime::forward && f.ratio <= 1.0 + 1e-12, "forward inequality violated");
    c.expect(!f.tight, "random forward pair flagged tight");

    const ConjugatePair reverse(rng.uniform(0.05, 0.95));
    const HolderCheck r = holder_inequality_check(p, q, reverse);
    reverse_min = std::min(reverse_min, r.ratio);
    c.expect(r.regime == HolderRegime::reverse && r.ratio >= 1.0 - 1e-12, "reverse inequality violated");
    c.expect(!r.tight, "random reverse pair flagged tight");

    // q = lambda p^(alpha/beta) makes p^alpha proportional to q^beta.
    const ConjugatePair pair(rng.uniform(1.05, 20.0));
    const double lambda = rng.log_uniform(1e-2, 1e2);
    std::vector<double> aligned;
    for (double x : p.weights()) aligned.push_back(lambda * std::pow(x, pair.alpha() / pair.beta()));
    const HolderCheck e = holder_inequality_check(p, DiscreteDensity(aligned), pair);
    c.expect(e.tight && std::abs(e.ratio - 1.0) < 1e-12, "constructed equality pair not detected");
  }
  return finish(c, "max forward ratio " + fmt("%.15f", forward_max) + ", min reverse ratio " +
                       fmt("%.15f", reverse_min));
}

// ---------------------------------------------------------------------------

Outcome limit_cases() {
  Random rng(4004);
  Checker c;
  double worst_one = 0.0, worst_inf = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = rng.integer(2, 8);
    const DiscreteDensity p(testing::to_std(rng.simplex(n)));
    const DiscreteDensity q(testing::to_std(rng.simplex(n)));
    const double one = std::abs(hpd_direct(p, q, ConjugatePair(1.0 + 1e-4)) - hpd_limit(p, q, HolderLimit::alpha_to_one));
    const double inf = std::abs(hpd_direct(p, q, ConjugatePair(1e4)) - hpd_limit(p, q, HolderLimit::alpha_to_inf));
    c.worst(worst_one, one);
    c.worst(worst_inf, inf);
    c.expect(one < 1e-2, "alpha -> 1 gap " + fmt("%.3g", one));
    c.expect(inf < 1e-2, "alpha -> inf gap " + fmt("%.3g", inf));
  }
  return finish(c, "max gap at 1+1e-4 " + fmt("%.2e", worst_one) + ", at 1e4 " + fmt("%.2e", worst_inf));
}

// ---------------------------------------------------------------------------

Outcome cccp_suites() {
  Random rng(5005);
  Checker c;
  const FamilyCase cases[] = {{FamilyId::bernoulli, 1}, {FamilyId::categorical, 2}, {FamilyId::gaussian, 1},
                              {FamilyId::gaussian, 2},  {FamilyId::laplace, 1},     {FamilyId::wishart, 1}};
  auto random_set = [&](FamilyCase fc, int n) {
    const FamilyPtr family = testing::family_of(fc.id, fc.dim);
    std::vector<NaturalParameter> thetas;
    std::vector<double> weights;
    for (int i = 0; i < n; ++i) {
      thetas.push_back(family->to_natural(rng.source(fc.id, fc.dim)));
      weights.push_back(rng.uniform(0.2, 1.0));
    }
    return WeightedSet(family, thetas, weights);
  };
  long traces = 0;
  auto monotone = [&](const CentroidResult& r, const std::string& what) {
    ++traces;
    for (std::size_t i = 1; i < r.trace.energies.size(); ++i) {
      if (r.trace.energies[i] > r.trace.energies[i - 1] + 1e-10) {
        c.expect(false, what + " energy increased at step " + std::to_string(i));
        return;
      }
    }
    c.expect(true, what);
  };

  CccpSettings tight;
  tight.tolerance = 1e-13;
  tight.max_iterations = 5000;
  for (const auto& fc : cases) {
    for (int trial = 0; trial < 20; ++trial) {
      const WeightedSet set = random_set(fc, rng.integer(2, 8));
      const std::string name = set.family().name();
      const double alpha = rng.uniform(1.1, 6.0);
      const ConjugatePair pair(alpha);
      const double gamma = rng.uniform(0.3, 4.0);
      monotone(hpd_centroid(set, pair), name + " hpd");
      monotone(hd_centroid(set, pair, gamma), name + " hd");
      monotone(sym_hd_centroid(set, pair, gamma), name + " sym-hd");
      monotone(sym_hpd_centroid(set, pair), name + " sym-hpd");
      monotone(hd_centroid_left(set, pair, gamma), name + " left hd");

      const NaturalParameter pseudo = hpd_centroid(set, pair, tight).centroid;
      const NaturalParameter proper = hd_centroid(set, pair, alpha, tight).centroid;
      const double gap = max_abs_diff(pseudo, (alpha - 1.0) * proper);
      c.expect(gap < 1e-8, name + " hpd centroid vs (alpha-1) hd centroid: " + fmt("%.3g", gap));

      const WeightedSet single(set.family_ptr(), {set.thetas()[0]});
      const NaturalParameter& theta = set.thetas()[0];
      c.expect(max_abs_diff(hd_centroid(single, pair, gamma).centroid, theta) < 1e-9, name + " single hd");
      c.expect(max_abs_diff(sym_hd_centroid(single, pair, gamma).centroid, theta) < 1e-9, name + " single sym-hd");
      c.expect(max_abs_diff(hpd_centroid(single, pair).centroid, (alpha - 1.0) * theta) < 1e-9, name + " single hpd");
    }
  }

  // Bernoulli objectives on a 1e-4 grid.
  const FamilyPtr bern = make_bernoulli();
  auto b = [&](double x) { return bern->make(Eigen::VectorXd::Constant(1, x)); };
  double bern_worst = 0.0;
  for (int trial = 0; trial < 6; ++trial) {
    const WeightedSet set = random_set({FamilyId::bernoulli, 1}, 5);
    const ConjugatePair pair(rng.uniform(1.2, 5.0));
    const double gamma = rng.uniform(0.5, 3.0);
    const CentroidKind kinds[] = {CentroidKind::hpd, CentroidKind::hd, CentroidKind::sym_hd, CentroidKind::sym_hpd};
    for (CentroidKind kind : kinds) {
      const CentroidProblem problem{kind, pair, gamma};
      const double centroid = solve_centroid(set, problem, set.barycenter()).centroid.coords[0];
      const double wide = testing::grid_argmin([&](double x) { return centroid_energy(set, problem, b(x)); }, -10.0,
                                               10.0, 1e-2);
      const double fine = testing::grid_argmin([&](double x) { return centroid_energy(set, problem, b(x)); },
                                               wide - 0.02, wide + 0.02, 1e-4);
      c.worst(bern_worst, std::abs(centroid - fine));
      c.expect(std::abs(centroid - fine) <= 1e-4 + 1e-12, "bernoulli grid oracle off by " + fmt("%.3g", centroid - fine));
    }
  }

  // One-dimensional Gaussian symmetric centroid on a (mean, variance) grid.
  const FamilyPtr g1 = make_gaussian(1);
  auto gauss = [&](double m, double v) {
    return g1->to_natural(GaussianSource{Eigen::VectorXd::Constant(1, m), Eigen::MatrixXd::Constant(1, 1, v)});
  };
  double gauss_worst = 0.0;
  for (int trial = 0; trial < 3; ++trial) {
    const WeightedSet set = random_set({FamilyId::gaussian, 1}, 4);
    const CentroidProblem problem{CentroidKind::sym_hd, ConjugatePair(rng.uniform(1.2, 4.0)), rng.uniform(0.5, 2.5)};
    const auto src = std::get<GaussianSource>(g1->from_natural(solve_centroid(set, problem, set.barycenter()).centroid));
    auto search = [&](double m0, double m1, double v0, double v1, double step) {
      double best = kInf, bm = 0.0, bv = 0.0;
      for (double m = m0; m <= m1; m += step) {
        for (double v = v0; v <= v1; v += step) {
          const double e = centroid_energy(set, problem, gauss(m, v));
          if (e < best) {
            best = e;
            bm = m;
            bv = v;
          }
        }
      }
      return std::array<double, 2>{bm, bv};
    };
    const auto coarse = search(-3.0, 3.0, 0.05, 4.0, 0.03);
    const auto fine = search(coarse[0] - 0.06, coarse[0] + 0.06, std::max(0.01, coarse[1] - 0.06), coarse[1] + 0.06, 1e-3);
    const double off = std::max(std::abs(src.mean[0] - fine[0]), std::abs(src.cov(0, 0) - fine[1]));
    c.worst(gauss_worst, off);
    c.expect(off <= 1e-3 + 1e-12, "gaussian grid oracle off by " + fmt("%.3g", off));
  }
  return finish(c, std::to_string(traces) + " monotone traces, bernoulli grid gap " + fmt("%.1e", bern_worst) +
                       ", gaussian grid gap " + fmt("%.1e", gauss_worst));
}

// ---------------------------------------------------------------------------

Outcome mixture_bounds_suite() {
  Random rng(6006);
  Checker c;
  double tightest_margin = kInf;
  auto random_mixture = [&](bool laplace) {
    const int k = rng.integer(2, 3);
    const FamilyPtr family = laplace ? make_laplace() : make_gaussian(1);
    std::vector<double> weights(k);
    std::vector<NaturalParameter> comps;
    double total = 0.0;
    for (auto& w : weights) total += (w = rng.uniform(0.2, 1.0));
    for (auto& w : weights) w /= total;
    double partial = 0.0;
    for (int i = 0; i + 1 < k; ++i) partial += weights[i];
    weights.back() = 1.0 - partial;
    for (int i = 0; i < k; ++i) {
      if (laplace) {
        comps.push_back(family->to_natural(LaplaceSource{rng.uniform(0.4, 2.5)}));
      } else {
        const double sd = rng.uniform(0.4, 2.0);
        comps.push_back(family->to_natural(
            GaussianSource{Eigen::VectorXd::Constant(1, rng.uniform(-3.0, 3.0)), Eigen::MatrixXd::Constant(1, 1, sd * sd)}));
      }
    }
    return make_mixture(family, weights, comps);
  };
  auto density = [](const Mixture& m) {
    Density1D d;
    d.eval = [&m](double x) { return mixture_density(m, x); };
    for (const auto& theta : m.components) {
      const SourceParameter s = m.family->from_natural(theta);
      double center = 0.0, scale = 1.0;
      if (const auto* g = std::get_if<GaussianSource>(&s)) {
        center = g->mean[0];
        scale = std::sqrt(g->cov(0, 0));
      } else {
        scale = std::get<LaplaceSource>(s).sigma;
      }
      for (double k : {0.0, 1.0, 2.0, 4.0, 8.0, 16.0}) {
        d.breakpoints.push_back(center - k * scale);
        d.breakpoints.push_back(center + k * scale);
      }
    }
    return d;
  };

  for (int trial = 0; trial < 100; ++trial) {
    const bool laplace = trial % 2 == 1;
    const Mixture a = random_mixture(laplace);
    const Mixture b2 = random_mixture(laplace);
    const double alpha = std::array<double, 3>{1.5, 2.0, 3.0}[static_cast<std::size_t>(trial) % 3];
    const ConjugatePair pair(alpha);
    const Density1D da = density(a), db = density(b2);

    const Bounds pa = power_integral_bounds(a, alpha, build_partition(a));
    const double ia =
        quadrature([&](double x) { return std::pow(da.eval(x), alpha); }, da.support, da.breakpoints, {});
    c.expect(pa.lower - 1e-9 <= ia && ia <= pa.upper + 1e-9, "power integral outside bounds");
    tightest_margin = std::min({tightest_margin, ia - pa.lower, pa.upper - ia});

    const Bounds d = hpd_mixture_bounds(a, b2, pair);
    const double reference = hpd_direct(da, db, pair);
    c.expect(d.lower - 1e-9 <= reference && reference <= d.upper + 1e-9, "hpd outside bounds");

    double previous = kInf;
    for (int resolution = 4; resolution <= 128; resolution *= 2) {
      const Bounds r = power_integral_bounds(a, alpha, build_partition(a, {.resolution = resolution}));
      c.expect(r.upper - r.lower <= previous + 1e-12, "gap grew under refinement");
      previous = r.upper - r.lower;
    }
  }
  return finish(c, "100 mixture pairs, smallest bracket margin " + fmt("%.2e", tightest_margin));
}

// ---------------------------------------------------------------------------

Outcome accuracy_table() {
  const int sizes[] = {50, 100};
  const double alphas[] = {1.1, 1.5, 2.0, 10.0};
  const double published[2][4] = {{95.6, 92.4, 92.2, 92.2}, {97.3, 94.9, 94.0, 94.2}};
  Checker c;
  std::ostringstream table;
  double means[2][4];
  for (int row = 0; row < 2; ++row) {
    table << "n=" << sizes[row] << ":";
    for (int col = 0; col < 4; ++col) {
      const ExperimentResult r = run_experiment(sizes[row], ConjugatePair(alphas[col]), alphas[col], 500, 20160903);
      means[row][col] = 100.0 * r.mean_accuracy;
      const double off = means[row][col] - published[row][col];
      table << " " << fmt("%.1f", means[row][col]) << "±" << fmt("%.1f", 100.0 * r.std_accuracy) << " ("
            << fmt("%+.1f", off) << ")";
      c.expect(std::abs(off) <= 3.0, "n=" + std::to_string(sizes[row]) + " alpha=gamma=" + fmt("%g", alphas[col]) +
                                         ": " + fmt("%.1f", means[row][col]) + " vs " + fmt("%.1f", published[row][col]));
    }
    const bool best = std::all_of(std::begin(means[row]) + 1, std::end(means[row]),
                                  [&](double m) { return means[row][0] > m; });
    c.expect(best, "alpha=gamma=1.1 not strictly best at n=" + std::to_string(sizes[row]));
    table << (row == 0 ? ";" : "");
  }
  return finish(c, table.str());
}

// ---------------------------------------------------------------------------

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream row(line);
    std::string cell;
    while (std::getline(row, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

double to_number(const std::string& s) { return s == "inf" ? kInf : std::stod(s); }

std::size_t argmin_row(const std::vector<std::vector<std::string>>& rows, std::size_t col) {
  std::size_t best = 1;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    if (to_number(rows[r][col]) < to_number(rows[best][col])) best = r;
  }
  return best;
}

std::size_t column_of(const std::vector<std::string>& header, const std::string& name) {
  return static_cast<std::size_t>(std::find(header.begin(), header.end(), name) - header.begin());
}

Outcome figure_grids() {
  Checker c;
  GridOptions uniform;
  uniform.resolution = 60;
  const auto rows = csv_rows(cmd_grid(uniform));
  const auto& header = rows.front();
  const std::size_t cs = column_of(header, "hpd_alpha=2");
  const std::size_t kl = column_of(header, "kl");
  const std::size_t at = argmin_row(rows, cs);
  for (int k = 0; k < 3; ++k) c.expect(std::abs(to_number(rows[at][k]) - 1.0 / 3.0) < 1e-12, "uniform argmin cell");

  int boundary = 0;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const bool edge = to_number(rows[r][0]) == 0.0 || to_number(rows[r][1]) == 0.0 || to_number(rows[r][2]) == 0.0;
    if (!edge) continue;
    ++boundary;
    c.expect(rows[r][kl] == "inf", "kl finite on a boundary cell");
    c.expect(std::isfinite(to_number(rows[r][cs])), "hpd(2) infinite on a boundary cell");
  }

  GridOptions displaced;
  displaced.resolution = 60;
  displaced.reference = {0.5, 1.0 / 3.0, 1.0 / 6.0};
  displaced.alphas = {4.0};
  const auto drows = csv_rows(cmd_grid(displaced));
  const std::size_t dat = argmin_row(drows, column_of(drows.front(), "hpd_alpha=4"));
  const Eigen::VectorXd center = hpd_minimizer_categorical(Eigen::Vector3d(0.5, 1.0 / 3.0, 1.0 / 6.0), 4.0);
  // The cell containing the formula's point: nearest lattice point per coordinate.
  double off = 0.0;
  for (int k = 0; k < 3; ++k) off = std::max(off, std::abs(to_number(drows[dat][k]) - center[k]));
  c.expect(off <= 1.0 / 60.0, "displaced-center argmin more than one cell away");
  return finish(c, "uniform argmin (" + rows[at][0] + ", " + rows[at][1] + ", " + rows[at][2] + "), displaced argmin (" +
                       drows[dat][0] + ", " + drows[dat][1] + ", " + drows[dat][2] + ") vs formula (" +
                       fmt("%.4f", center[0]) + ", " + fmt("%.4f", center[1]) + ", " + fmt("%.4f", center[2]) + "), " +
                       std::to_string(boundary) + " boundary cells");
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
  double budget_seconds;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  bool allow_known = false;
  std::vector<int> only;
  app.add_flag("--allow-known-failures", allow_known, "Do not fail the run on documented known failures");
  app.add_option("criteria", only, "Criterion numbers to run (default: all)");
  CLI11_PARSE(app, argc, argv);

  const std::set<int> known_failures{7};
  const Criterion criteria[] = {
      {1, "oracle equivalence", oracle_equivalence, 60.0},
      {2, "identity suite", identity_suite, kInf},
      {3, "Hoelder inequality", holder_inequality, kInf},
      {4, "limit cases", limit_cases, kInf},
      {5, "CCCP suites", cccp_suites, 120.0},
      {6, "mixture bounds", mixture_bounds_suite, kInf},
      {7, "clustering accuracy table", accuracy_table, 600.0},
      {8, "figure grids", figure_grids, kInf},
  };

  int unexpected = 0;
  int failed = 0;
  for (const auto& criterion : criteria) {
    if (!only.empty() && std::find(only.begin(), only.end(), criterion.id) == only.end()) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = criterion.run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what(), {}};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (seconds > criterion.budget_seconds) {
      outcome.pass = false;
      outcome.notes.push_back("runtime " + fmt("%.1f", seconds) + " s exceeds " + fmt("%.0f", criterion.budget_seconds) +
                              " s");
    }
    std::printf("%s %d %s: %s (%.1f s)\n", outcome.pass ? "PASS" : "FAIL", criterion.id, criterion.name,
                outcome.detail.c_str(), seconds);
    for (const auto& note : outcome.notes) std::printf("     %s\n", note.c_str());
    std::fflush(stdout);
    if (!outcome.pass) {
      ++failed;
      if (!(allow_known && known_failures.count(criterion.id))) ++unexpected;
    }
  }
  if (failed > 0 && unexpected == 0) std::printf("%d known failure(s) tolerated\n", failed);
  return unexpected == 0 ? 0 : 1;
}
