#include "holder/closed_form.hpp"
#include "holder/error.hpp"
#include "holder/oracle.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace holder;
using holder::testing::Random;

namespace {

NaturalParameter gaussian1(double mean, double var) {
  return make_gaussian(1)->to_natural(
      GaussianSource{Eigen::VectorXd::Constant(1, mean), Eigen::MatrixXd::Constant(1, 1, var)});
}

NaturalParameter bernoulli(double theta) { return make_bernoulli()->make(Eigen::VectorXd::Constant(1, theta)); }

NaturalParameter laplace(double sigma) { return make_laplace()->to_natural(LaplaceSource{sigma}); }

DiscreteDensity probs(const ExponentialFamily& fam, const NaturalParameter& t) { return discrete_density(fam, t); }

}  // namespace

TEST(HpdClosed, Examples) {
  const auto b = make_bernoulli();
  for (double alpha : {1.1, 2.0, 5.0}) EXPECT_NEAR(hpd_closed(*b, bernoulli(0), bernoulli(0), ConjugatePair(alpha)), 0, 1e-14);

  const auto cat = make_categorical(2);
  const NaturalParameter ref = cat->to_natural(CategoricalSource{Eigen::Vector3d::Constant(1.0 / 3)});
  const NaturalParameter q = cat->to_natural(CategoricalSource{Eigen::Vector3d(0.5, 0.25, 0.25)});
  const double by_sums = holder::testing::hpd_by_sums({1.0 / 3, 1.0 / 3, 1.0 / 3}, {0.5, 0.25, 0.25}, 2.0);
  EXPECT_NEAR(hpd_closed(*cat, ref, q, ConjugatePair(2.0)), by_sums, 1e-14);
  EXPECT_NEAR(by_sums, 0.058892, 1e-6);

  Random rnd(41);
  for (int trial = 0; trial < 50; ++trial) {
    const NaturalParameter t = cat->to_natural(rnd.source(FamilyId::categorical, 2));
    const double alpha = rnd.uniform(1.1, 8.0);
    EXPECT_NEAR(hpd_closed(*cat, t, (alpha - 1.0) * t, ConjugatePair(alpha)), 0.0, 1e-12);
  }
}

TEST(HpdClosed, RequestOverloadMatches) {
  const auto g = make_gaussian(1);
  const DivergenceRequest req{g, gaussian1(0.2, 0.8), gaussian1(-0.4, 1.3), ConjugatePair(3.0), 1.7};
  EXPECT_EQ(hpd_closed(req), hpd_closed(*g, req.theta_p, req.theta_q, req.pair));
  EXPECT_EQ(hd_closed(req), hd_closed(*g, req.theta_p, req.theta_q, req.pair, 1.7));
}

TEST(HdClosed, Examples) {
  Random rnd(42);
  const auto g = make_gaussian(2);
  for (int trial = 0; trial < 20; ++trial) {
    const NaturalParameter t = g->to_natural(rnd.source(FamilyId::gaussian, 2));
    EXPECT_NEAR(hd_closed(*g, t, t, ConjugatePair(rnd.uniform(1.1, 9.0)), rnd.uniform(0.3, 6.0)), 0.0, 1e-12);
  }
  const auto lap = make_laplace();
  const double reference = hd_closed(*lap, laplace(0.7), laplace(2.3), ConjugatePair(3.0), 1.0);
  for (double gamma : {0.5, 1.0, 2.0, 5.0, 10.0}) {
    EXPECT_NEAR(hd_closed(*lap, laplace(0.7), laplace(2.3), ConjugatePair(3.0), gamma), reference, 1e-12);
  }
}

TEST(HdClosed, LaplaceEqualScalesAtFour) {
  const auto lap = make_laplace();
  const double expected = 0.25 * std::log(0.25) + 0.75 * std::log(0.75) - std::log(0.5);
  EXPECT_NEAR(expected, 0.130812, 1e-6);
  // With equal scales the proper divergence vanishes; the value belongs to
  // the pseudo-divergence, which sees the displaced point.
  EXPECT_NEAR(hd_closed(*lap, laplace(1.0), laplace(1.0), ConjugatePair(4.0), 2.0), 0.0, 1e-14);
  EXPECT_NEAR(hpd_closed(*lap, laplace(1.0), laplace(1.0), ConjugatePair(4.0)), expected, 1e-14);
  EXPECT_NEAR(hpd_direct(density_1d(*lap, laplace(1.0)), density_1d(*lap, laplace(1.0)), ConjugatePair(4.0)), expected,
              1e-9);
}

TEST(CsClosed, Examples) {
  const auto g = make_gaussian(1);
  EXPECT_NEAR(cs_closed(*g, gaussian1(0, 1), gaussian1(1, 1)), 0.25, 1e-14);
  EXPECT_NEAR(cs_closed(*g, gaussian1(0.3, 2), gaussian1(0.3, 2)), 0.0, 1e-14);
  Random rnd(43);
  const auto g3 = make_gaussian(3);
  for (int trial = 0; trial < 50; ++trial) {
    const NaturalParameter p = g3->to_natural(rnd.source(FamilyId::gaussian, 3));
    const NaturalParameter q = g3->to_natural(rnd.source(FamilyId::gaussian, 3));
    const double cs = cs_closed(*g3, p, q);
    EXPECT_EQ(hpd_closed(*g3, p, q, ConjugatePair(2.0)), cs);
    EXPECT_EQ(hd_closed(*g3, p, q, ConjugatePair(2.0), 2.0), cs);
    EXPECT_EQ(cs_closed(*g3, q, p), cs);
  }
}

TEST(SymmetricClosed, Properties) {
  Random rnd(44);
  for (FamilyId id : {FamilyId::categorical, FamilyId::gaussian, FamilyId::laplace, FamilyId::wishart}) {
    const int dim = id == FamilyId::laplace ? 1 : 2;
    const FamilyPtr fam = holder::testing::family_of(id, dim);
    for (int trial = 0; trial < 30; ++trial) {
      const NaturalParameter p = fam->to_natural(rnd.source(id, dim));
      const NaturalParameter q = fam->to_natural(rnd.source(id, dim));
      const ConjugatePair pair(rnd.uniform(1.2, 6.0));
      const double gamma = rnd.uniform(0.5, 4.0);
      const double shpd = sym_hpd_closed(*fam, p, q, pair);
      const double shd = sym_hd_closed(*fam, p, q, pair, gamma);
      const double tol = 1e-12 * std::max(1.0, shpd);
      EXPECT_NEAR(sym_hpd_closed(*fam, q, p, pair), shpd, tol);
      EXPECT_NEAR(sym_hpd_closed(*fam, p, q, pair.dual()), shpd, tol);
      EXPECT_NEAR(sym_hd_closed(*fam, q, p, pair, gamma), shd, 1e-12 * std::max(1.0, shd));
      EXPECT_NEAR(sym_hd_closed(*fam, p, q, pair.dual(), gamma), shd, 1e-12 * std::max(1.0, shd));
      const double mean = 0.5 * (hpd_closed(*fam, p, q, pair) + hpd_closed(*fam, q, p, pair));
      EXPECT_NEAR(shpd, mean, 1e-10 * std::max(1.0, mean));
      EXPECT_NEAR(sym_hd_closed(*fam, p, p, pair, gamma), 0.0, 1e-12);
      EXPECT_EQ(sym_hd_closed(*fam, p, q, ConjugatePair(2.0), 2.0), cs_closed(*fam, p, q));
    }
  }
}

TEST(SkewBhattacharyyaClosed, Examples) {
  const auto g = make_gaussian(1);
  EXPECT_NEAR(skew_bhattacharyya_closed(*g, gaussian1(0, 1), gaussian1(1, 1), 0.5), 0.125, 1e-14);
  EXPECT_NEAR(skew_bhattacharyya_closed(*g, gaussian1(2, 3), gaussian1(2, 3), 0.3), 0.0, 1e-14);
  const auto b = make_bernoulli();
  for (double tp = -3.0; tp <= 3.0; tp += 0.5) {
    for (double tq = -3.0; tq <= 3.0; tq += 0.75) {
      for (double lambda : {0.1, 0.5, 0.8}) {
        EXPECT_NEAR(skew_bhattacharyya_closed(*b, bernoulli(tp), bernoulli(tq), lambda),
                    skew_bhattacharyya_direct(probs(*b, bernoulli(tp)), probs(*b, bernoulli(tq)), lambda), 1e-12);
      }
    }
  }
}

TEST(EscortDivergence, EqualsSkewBhattacharyya) {
  const auto g = make_gaussian(1);
  EXPECT_NEAR(escort_divergence(*g, gaussian1(0, 1), gaussian1(1, 1), ConjugatePair(2.0)), 0.125, 1e-14);
  EXPECT_NEAR(escort_divergence(*g, gaussian1(0.5, 1), gaussian1(0.5, 1), ConjugatePair(3.0)), 0.0, 1e-14);
  Random rnd(45);
  for (FamilyId id : {FamilyId::categorical, FamilyId::gaussian, FamilyId::laplace, FamilyId::wishart}) {
    const int dim = id == FamilyId::laplace ? 1 : 2;
    const FamilyPtr fam = holder::testing::family_of(id, dim);
    for (int trial = 0; trial < 30; ++trial) {
      const NaturalParameter p = fam->to_natural(rnd.source(id, dim));
      const NaturalParameter q = fam->to_natural(rnd.source(id, dim));
      const ConjugatePair pair(rnd.uniform(1.1, 10.0));
      const double escort = escort_divergence(*fam, p, q, pair);
      EXPECT_NEAR(escort, skew_bhattacharyya_closed(*fam, p, q, 1.0 / pair.alpha()), 1e-10);
      EXPECT_NEAR(escort,
                  hpd_closed(*fam, fam->escort_natural(p, pair.alpha()), fam->escort_natural(q, pair.beta()), pair),
                  1e-10);
    }
  }
}

TEST(PreAim, Identities) {
  Random rnd(46);
  const auto b = make_bernoulli();
  const NaturalParameter p = bernoulli(rnd.uniform(-2, 2)), q = bernoulli(rnd.uniform(-2, 2));
  EXPECT_NEAR(hpd_closed(*b, p / 2.0, q, ConjugatePair(3.0)), hd_closed(*b, p, q, ConjugatePair(3.0), 1.5), 1e-12);

  const auto g = make_gaussian(2);
  const NaturalParameter gp = g->to_natural(rnd.source(FamilyId::gaussian, 2));
  const NaturalParameter gq = g->to_natural(rnd.source(FamilyId::gaussian, 2));
  const PreAimCheck at_two = pre_aim_check(*g, gp, gq, ConjugatePair(2.0));
  EXPECT_NEAR(at_two.powered_lhs, cs_closed(*g, gp, gq), 1e-12);
  EXPECT_NEAR(at_two.reversed_rhs, cs_closed(*g, gp, gq), 1e-12);

  const auto cat = make_categorical(3);
  for (int trial = 0; trial < 30; ++trial) {
    const NaturalParameter cp = cat->to_natural(rnd.source(FamilyId::categorical, 3));
    const NaturalParameter cq = cat->to_natural(rnd.source(FamilyId::categorical, 3));
    const ConjugatePair pair(1.5);
    const PreAimCheck c = pre_aim_check(*cat, cp, cq, pair);
    EXPECT_NEAR(c.powered_lhs, c.powered_rhs, 1e-10);
    EXPECT_NEAR(c.reversed_lhs, c.reversed_rhs, 1e-10);
    // p^(1/(alpha-1)) through plain sums.
    const DiscreteDensity pd = probs(*cat, cp), qd = probs(*cat, cq);
    std::vector<double> pv(pd.weights().begin(), pd.weights().end());
    for (double& x : pv) x = x * x;
    const std::vector<double> qv(qd.weights().begin(), qd.weights().end());
    EXPECT_NEAR(c.powered_lhs, holder::testing::hpd_by_sums(pv, qv, 1.5), 1e-10);
  }
}

TEST(Minimizer, Examples) {
  const Eigen::Vector3d c(0.5, 1.0 / 3, 1.0 / 6);
  EXPECT_LT((hpd_minimizer_categorical(c, 2.0) - c).norm(), 1e-15);
  const Eigen::Vector4d uniform = Eigen::Vector4d::Constant(0.25);
  EXPECT_LT((hpd_minimizer_categorical(uniform, 7.0) - uniform).norm(), 1e-15);

  const Eigen::VectorXd m = hpd_minimizer_categorical(c, 4.0);
  const double total = 1.0 / 8 + 1.0 / 27 + 1.0 / 216;
  EXPECT_NEAR(m[0], (1.0 / 8) / total, 1e-15);
  EXPECT_NEAR(m[1], (1.0 / 27) / total, 1e-15);
  EXPECT_NEAR(m[2], (1.0 / 216) / total, 1e-15);
  EXPECT_NEAR(m[0], 0.75, 1e-15);
  EXPECT_NEAR(hpd_direct(DiscreteDensity({0.5, 1.0 / 3, 1.0 / 6}), DiscreteDensity(holder::testing::to_std(m)),
                         ConjugatePair(4.0)),
              0.0, 1e-10);
  EXPECT_THROW(hpd_minimizer_categorical(Eigen::Vector3d(0.0, 0.5, 0.5), 3.0), std::domain_error);
}

TEST(Bisector, Properties) {
  const auto b = make_bernoulli();
  Random rnd(47);
  for (int trial = 0; trial < 100; ++trial) {
    const NaturalParameter t1 = bernoulli(rnd.uniform(-3, 3)), t2 = bernoulli(rnd.uniform(-3, 3));
    const NaturalParameter t = bernoulli(rnd.uniform(-3, 3));
    const ConjugatePair pair(rnd.uniform(1.1, 6.0));
    EXPECT_NEAR(hpd_bisector_residual(*b, t1, t1, t, pair), 0.0, 1e-15);
    const double r = hpd_bisector_residual(*b, t1, t2, t, pair);
    EXPECT_NEAR(r, hpd_closed(*b, t1, t, pair) - hpd_closed(*b, t2, t, pair), 1e-12);
    EXPECT_NEAR(hpd_bisector_residual(*b, t2, t1, t, pair), -r, 1e-15);
  }
}

TEST(OracleEquivalence, RandomizedSweep) {
  Random rnd(48);
  for (FamilyId id : {FamilyId::categorical, FamilyId::bernoulli, FamilyId::gaussian, FamilyId::laplace,
                      FamilyId::wishart}) {
    for (int trial = 0; trial < 10; ++trial) {
      const int dim = id == FamilyId::categorical ? rnd.integer(1, 4) : 1;
      const FamilyPtr fam = holder::testing::family_of(id, dim);
      const NaturalParameter p = fam->to_natural(rnd.source(id, dim));
      const NaturalParameter q = fam->to_natural(rnd.source(id, dim));
      const ConjugatePair pair(rnd.uniform(1.1, 6.0));
      const double gamma = rnd.uniform(0.5, 5.0);
      double hpd_ref, hd_ref;
      if (id == FamilyId::categorical || id == FamilyId::bernoulli) {
        hpd_ref = hpd_direct(discrete_density(*fam, p), discrete_density(*fam, q), pair);
        hd_ref = hd_direct(discrete_density(*fam, p), discrete_density(*fam, q), pair, gamma);
      } else {
        hpd_ref = hpd_direct(density_1d(*fam, p), density_1d(*fam, q), pair);
        hd_ref = hd_direct(density_1d(*fam, p), density_1d(*fam, q), pair, gamma);
      }
      EXPECT_NEAR(hpd_closed(*fam, p, q, pair), hpd_ref, 1e-6) << fam->name();
      EXPECT_NEAR(hd_closed(*fam, p, q, pair, gamma), hd_ref, 1e-6) << fam->name();
    }
  }
}

TEST(Properties, DualityAndNonnegativeGap) {
  Random rnd(49);
  for (FamilyId id : {FamilyId::categorical, FamilyId::gaussian, FamilyId::laplace, FamilyId::wishart}) {
    const int dim = id == FamilyId::laplace ? 1 : 2;
    const FamilyPtr fam = holder::testing::family_of(id, dim);
    for (int trial = 0; trial < 50; ++trial) {
      const NaturalParameter p = fam->to_natural(rnd.source(id, dim));
      const NaturalParameter q = fam->to_natural(rnd.source(id, dim));
      const ConjugatePair pair(rnd.uniform(1.1, 10.0));
      const double gamma = rnd.uniform(0.5, 5.0);
      const double hpd = hpd_closed(*fam, p, q, pair);
      const double hd = hd_closed(*fam, p, q, pair, gamma);
      EXPECT_NEAR(hpd_closed(*fam, q, p, pair.dual()), hpd, 1e-12 * std::max(1.0, hpd));
      EXPECT_NEAR(hd_closed(*fam, q, p, pair.dual(), gamma), hd, 1e-12 * std::max(1.0, hd));
      const double lhs = fam->log_normalizer(pair.alpha() * p) / pair.alpha() +
                         fam->log_normalizer(pair.beta() * q) / pair.beta();
      EXPECT_GE(lhs, fam->log_normalizer(p + q) - 1e-12 * std::max(1.0, std::abs(lhs)));
    }
  }
}

TEST(Preflight, NamesTheViolatedCombination) {
  const auto w = make_wishart(1);
  // theta2 = -0.4 is valid, but 3 * theta2 = -1.2 is not (theta2 > -1 required).
  const NaturalParameter p = w->make(Eigen::Vector2d(-0.5, -0.4));
  const NaturalParameter q = w->make(Eigen::Vector2d(-0.5, 0.5));
  try {
    hpd_closed(*w, p, q, ConjugatePair(3.0));
    FAIL() << "expected DomainError";
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("alpha*theta_p"), std::string::npos) << e.what();
  }
  EXPECT_THROW(hpd_closed(*make_bernoulli(), bernoulli(0), bernoulli(0), ConjugatePair(0.5)), std::invalid_argument);
  EXPECT_THROW(hd_closed(*make_bernoulli(), bernoulli(0), bernoulli(0), ConjugatePair(2.0), -1.0),
               std::invalid_argument);
}

TEST(EqualityReachable, MembershipOnly) {
  const auto lap = make_laplace();
  // alpha*theta_p - beta*theta_q with theta = -1/sigma.
  EXPECT_TRUE(holder_equality_reachable(*lap, laplace(0.25), laplace(1.0), ConjugatePair(2.0)));
  EXPECT_FALSE(holder_equality_reachable(*lap, laplace(1.0), laplace(0.25), ConjugatePair(2.0)));
  EXPECT_TRUE(holder_equality_reachable(*make_bernoulli(), bernoulli(0.3), bernoulli(-2), ConjugatePair(1.01)));
}
