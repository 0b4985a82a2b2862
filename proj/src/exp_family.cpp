#include "holder/exp_family.hpp"

#include "holder/error.hpp"

#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/trigamma.hpp>
#include <boost/math/constants/constants.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace holder {

namespace {

constexpr double kMaxCondition = 1e12;
constexpr double kSimplexTolerance = 1e-12;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

void require_same_family(const NaturalParameter& a, const NaturalParameter& b) {
  if (a.family != b.family || a.coords.size() != b.coords.size()) {
    throw std::invalid_argument("natural parameters belong to different families");
  }
}

// lower(m) with off-diagonal entries doubled, the sufficient-statistic packing.
Eigen::VectorXd pack_lower_doubled(const Eigen::MatrixXd& m) {
  Eigen::VectorXd out = pack_lower(m);
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j <= i; ++j, ++k) {
      if (i != j) out[k] *= 2.0;
    }
  }
  return out;
}

Eigen::MatrixXd unpack_lower_halved(const Eigen::VectorXd& packed, Eigen::Index d) {
  Eigen::MatrixXd m = unpack_lower(packed, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      if (i != j) m(i, j) *= 0.5;
    }
  }
  return m;
}

// Empty when m is symmetric positive definite with bounded condition number.
std::optional<std::string> spd_violation(const Eigen::MatrixXd& m, std::string_view label) {
  if (!m.allFinite()) return std::string(label) + " has non-finite entries";
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m, Eigen::EigenvaluesOnly);
  const double lo = eig.eigenvalues().minCoeff();
  const double hi = eig.eigenvalues().maxCoeff();
  if (!(lo > 0.0)) {
    return std::string(label) + " is not positive definite (smallest eigenvalue " + fmt(lo) + ")";
  }
  if (hi / lo > kMaxCondition) {
    return std::string(label) + " condition number " + fmt(hi / lo) + " exceeds 1e12";
  }
  return std::nullopt;
}

bool is_symmetric(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) return false;
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  return (m - m.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * scale;
}

double log_det_spd(const Eigen::MatrixXd& m) {
  Eigen::LLT<Eigen::MatrixXd> llt(m);
  return 2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
}

// ---------------------------------------------------------------------------

class CategoricalFamily final : public ExponentialFamily {
 public:
  CategoricalFamily(FamilyId id, int m)
      : ExponentialFamily(id, m, 1,
                          id == FamilyId::bernoulli ? "bernoulli"
                                                    : "categorical(m=" + std::to_string(m) + ")") {}

 protected:
  std::optional<std::string> violation(const Eigen::VectorXd& c) const override {
    for (Eigen::Index i = 0; i < c.size(); ++i) {
      if (!std::isfinite(c[i])) return "coordinate " + std::to_string(i) + " is not finite";
    }
    return std::nullopt;
  }

  double F(const Eigen::VectorXd& c) const override {
    const double top = std::max(0.0, c.maxCoeff());
    return top + std::log(std::exp(-top) + (c.array() - top).exp().sum());
  }

  Eigen::VectorXd gradF(const Eigen::VectorXd& c) const override {
    return (c.array() - F(c)).exp().matrix();
  }

  Eigen::VectorXd invGradF(const Eigen::VectorXd& eta) const override {
    double total = 0.0;
    for (Eigen::Index i = 0; i < eta.size(); ++i) {
      if (!(eta[i] > 0.0)) fail("expectation coordinate " + std::to_string(i) + " = " + fmt(eta[i]) + " must be > 0");
      total += eta[i];
    }
    if (!(total < 1.0)) fail("expectation coordinates sum to " + fmt(total) + ", must be < 1");
    const double log_p0 = std::log1p(-total);
    return (eta.array().log() - log_p0).matrix();
  }

  Eigen::MatrixXd hessF(const Eigen::VectorXd& c) const override {
    const Eigen::VectorXd p = gradF(c);
    Eigen::MatrixXd h = -p * p.transpose();
    h.diagonal() += p;
    return h;
  }

  Eigen::VectorXd stat(std::span<const double> x) const override {
    Eigen::VectorXd t = Eigen::VectorXd::Zero(dim());
    const double k = x[0];
    if (k != std::floor(k) || k < 0 || k > static_cast<double>(dim())) {
      t.setConstant(kNaN);
      return t;
    }
    if (k >= 1) t[static_cast<Eigen::Index>(k) - 1] = 1.0;
    return t;
  }

  Eigen::VectorXd natural_from_source(const SourceParameter& s) const override {
    Eigen::VectorXd probs;
    if (id() == FamilyId::bernoulli) {
      const auto* b = std::get_if<BernoulliSource>(&s);
      if (!b) throw std::invalid_argument("bernoulli family expects a BernoulliSource");
      probs.resize(2);
      probs << 1.0 - b->p1, b->p1;
    } else {
      const auto* cat = std::get_if<CategoricalSource>(&s);
      if (!cat) throw std::invalid_argument("categorical family expects a CategoricalSource");
      probs = cat->probs;
    }
    if (probs.size() != dim() + 1) {
      fail("expected " + std::to_string(dim() + 1) + " probabilities, got " + std::to_string(probs.size()));
    }
    for (Eigen::Index i = 0; i < probs.size(); ++i) {
      if (!(probs[i] > 0.0 && probs[i] < 1.0)) {
        fail("probability " + std::to_string(i) + " = " + fmt(probs[i]) + " is not in the open interval (0,1)");
      }
    }
    if (std::abs(probs.sum() - 1.0) > kSimplexTolerance) {
      fail("probabilities sum to " + fmt(probs.sum()) + ", expected 1");
    }
    return (probs.tail(dim()).array() / probs[0]).log().matrix();
  }

  SourceParameter source_from_natural(const Eigen::VectorXd& c) const override {
    const double f = F(c);
    Eigen::VectorXd probs(dim() + 1);
    probs[0] = std::exp(-f);
    probs.tail(dim()) = (c.array() - f).exp().matrix();
    if (id() == FamilyId::bernoulli) return BernoulliSource{probs[1]};
    return CategoricalSource{probs};
  }
};

// ---------------------------------------------------------------------------

class GaussianFamily final : public ExponentialFamily {
 public:
  explicit GaussianFamily(int d)
      : ExponentialFamily(FamilyId::gaussian, d + packed_size(d), d, "gaussian(d=" + std::to_string(d) + ")"),
        d_(d) {}

 protected:
  Eigen::MatrixXd precision(const Eigen::VectorXd& c) const {
    return -2.0 * unpack_lower(c.tail(packed_size(d_)), d_);
  }

  std::optional<std::string> violation(const Eigen::VectorXd& c) const override {
    if (!c.allFinite()) return std::string("coordinates are not finite");
    if (auto v = spd_violation(precision(c), "-2M")) return "M not negative definite: " + *v;
    return std::nullopt;
  }

  double F(const Eigen::VectorXd& c) const override {
    const Eigen::MatrixXd p = precision(c);
    Eigen::LLT<Eigen::MatrixXd> llt(p);
    const Eigen::VectorXd v = c.head(d_);
    const double log_det = 2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
    return 0.5 * d_ * std::log(2.0 * boost::math::constants::pi<double>()) - 0.5 * log_det +
           0.5 * v.dot(llt.solve(v));
  }

  Eigen::VectorXd gradF(const Eigen::VectorXd& c) const override {
    Eigen::LLT<Eigen::MatrixXd> llt(precision(c));
    const Eigen::MatrixXd sigma = llt.solve(Eigen::MatrixXd::Identity(d_, d_));
    const Eigen::VectorXd mu = sigma * c.head(d_);
    Eigen::VectorXd g(dim());
    g.head(d_) = mu;
    g.tail(packed_size(d_)) = pack_lower_doubled(sigma + mu * mu.transpose());
    return g;
  }

  Eigen::VectorXd invGradF(const Eigen::VectorXd& eta) const override {
    const Eigen::VectorXd mu = eta.head(d_);
    const Eigen::MatrixXd second = unpack_lower_halved(eta.tail(packed_size(d_)), d_);
    const Eigen::MatrixXd sigma = second - mu * mu.transpose();
    if (auto v = spd_violation(sigma, "implied covariance")) fail("expectation parameter: " + *v);
    const Eigen::MatrixXd prec = sigma.llt().solve(Eigen::MatrixXd::Identity(d_, d_));
    Eigen::VectorXd c(dim());
    c.head(d_) = prec * mu;
    c.tail(packed_size(d_)) = pack_lower(-0.5 * prec);
    return c;
  }

  Eigen::VectorXd stat(std::span<const double> x) const override {
    Eigen::Map<const Eigen::VectorXd> xv(x.data(), d_);
    Eigen::VectorXd t(dim());
    t.head(d_) = xv;
    t.tail(packed_size(d_)) = pack_lower_doubled(xv * xv.transpose());
    return t;
  }

  Eigen::VectorXd natural_from_source(const SourceParameter& s) const override {
    const auto* g = std::get_if<GaussianSource>(&s);
    if (!g) throw std::invalid_argument("gaussian family expects a GaussianSource");
    if (g->mean.size() != d_ || g->cov.rows() != d_ || g->cov.cols() != d_) {
      fail("mean/covariance shape does not match d=" + std::to_string(d_));
    }
    if (!g->mean.allFinite()) fail("mean has non-finite entries");
    if (!is_symmetric(g->cov)) fail("covariance is not symmetric");
    if (auto v = spd_violation(g->cov, "covariance")) fail(*v);
    const Eigen::MatrixXd prec = g->cov.llt().solve(Eigen::MatrixXd::Identity(d_, d_));
    Eigen::VectorXd c(dim());
    c.head(d_) = prec * g->mean;
    c.tail(packed_size(d_)) = pack_lower(-0.5 * prec);
    return c;
  }

  SourceParameter source_from_natural(const Eigen::VectorXd& c) const override {
    const Eigen::MatrixXd sigma = precision(c).llt().solve(Eigen::MatrixXd::Identity(d_, d_));
    return GaussianSource{sigma * c.head(d_), sigma};
  }

 private:
  int d_;
};

// ---------------------------------------------------------------------------

class LaplaceFamily final : public ExponentialFamily {
 public:
  LaplaceFamily() : ExponentialFamily(FamilyId::laplace, 1, 1, "laplace") {}

 protected:
  std::optional<std::string> violation(const Eigen::VectorXd& c) const override {
    if (!(c[0] < 0.0) || !std::isfinite(c[0])) return "coordinate 0 = " + fmt(c[0]) + " must be < 0";
    return std::nullopt;
  }

  double F(const Eigen::VectorXd& c) const override { return std::log(2.0) - std::log(-c[0]); }

  Eigen::VectorXd gradF(const Eigen::VectorXd& c) const override {
    return Eigen::VectorXd::Constant(1, -1.0 / c[0]);
  }

  Eigen::VectorXd invGradF(const Eigen::VectorXd& eta) const override {
    if (!(eta[0] > 0.0)) fail("expectation coordinate 0 = " + fmt(eta[0]) + " must be > 0");
    return Eigen::VectorXd::Constant(1, -1.0 / eta[0]);
  }

  Eigen::MatrixXd hessF(const Eigen::VectorXd& c) const override {
    return Eigen::MatrixXd::Constant(1, 1, 1.0 / (c[0] * c[0]));
  }

  Eigen::VectorXd stat(std::span<const double> x) const override {
    return Eigen::VectorXd::Constant(1, std::abs(x[0]));
  }

  Eigen::VectorXd natural_from_source(const SourceParameter& s) const override {
    const auto* l = std::get_if<LaplaceSource>(&s);
    if (!l) throw std::invalid_argument("laplace family expects a LaplaceSource");
    if (!(l->sigma > 0.0) || !std::isfinite(l->sigma)) fail("sigma = " + fmt(l->sigma) + " must be > 0");
    return Eigen::VectorXd::Constant(1, -1.0 / l->sigma);
  }

  SourceParameter source_from_natural(const Eigen::VectorXd& c) const override {
    return LaplaceSource{-1.0 / c[0]};
  }
};

// ---------------------------------------------------------------------------

class WishartFamily final : public ExponentialFamily {
 public:
  explicit WishartFamily(int d)
      : ExponentialFamily(FamilyId::wishart, packed_size(d) + 1, packed_size(d),
                          "wishart(d=" + std::to_string(d) + ")"),
        d_(d) {}

 protected:
  static constexpr int kNewtonMaxIterations = 200;
  static constexpr double kNewtonTolerance = 1e-10;

  Eigen::MatrixXd neg_theta1(const Eigen::VectorXd& c) const {
    return -unpack_lower(c.head(packed_size(d_)), d_);
  }
  // Half the degrees of freedom, n/2 = theta2 + (d+1)/2.
  double half_dof(const Eigen::VectorXd& c) const { return c[dim() - 1] + 0.5 * (d_ + 1); }

  std::optional<std::string> violation(const Eigen::VectorXd& c) const override {
    if (!c.allFinite()) return std::string("coordinates are not finite");
    if (auto v = spd_violation(neg_theta1(c), "-theta1")) return "theta1 not negative definite: " + *v;
    if (!(c[dim() - 1] > -1.0)) {
      return "theta2 = " + fmt(c[dim() - 1]) + " must exceed -1 (n > d - 1)";
    }
    return std::nullopt;
  }

  double F(const Eigen::VectorXd& c) const override {
    const double a = half_dof(c);
    return -a * log_det_spd(neg_theta1(c)) + log_multigamma(a, d_);
  }

  Eigen::VectorXd gradF(const Eigen::VectorXd& c) const override {
    const double a = half_dof(c);
    const Eigen::MatrixXd nt = neg_theta1(c);
    const Eigen::MatrixXd mean = a * nt.llt().solve(Eigen::MatrixXd::Identity(d_, d_));
    Eigen::VectorXd g(dim());
    g.head(packed_size(d_)) = pack_lower_doubled(mean);
    g[dim() - 1] = -log_det_spd(nt) + multi_digamma(a, d_);
    return g;
  }

  // E[X] = a inv(-theta1) and E[log|X|] = log|E[X]| - d log a + psi_d(a), so
  // theta follows from the scalar equation psi_d(a) - d log a = c, solved by
  // damped Newton (the left side increases monotonically in a).
  Eigen::VectorXd invGradF(const Eigen::VectorXd& eta) const override {
    const Eigen::MatrixXd mean = unpack_lower_halved(eta.head(packed_size(d_)), d_);
    if (auto v = spd_violation(mean, "expected matrix")) fail("expectation parameter: " + *v);
    const double target = eta[dim() - 1] - log_det_spd(mean);
    if (!(target < 0.0)) {
      fail("E[log|X|] - log|E[X]| = " + fmt(target) + " must be < 0");
    }
    const double lower = 0.5 * (d_ - 1);
    auto residual = [&](double a) { return multi_digamma(a, d_) - d_ * std::log(a) - target; };
    auto slope = [&](double a) {
      double s = -d_ / a;
      for (int j = 0; j < d_; ++j) s += boost::math::trigamma(a - 0.5 * j);
      return s;
    };
    double a = std::max(-0.25 * d_ * (d_ + 1) / target, lower + 1e-3);
    double r = residual(a);
    int it = 0;
    for (; it < kNewtonMaxIterations && std::abs(r) > kNewtonTolerance; ++it) {
      const double step = r / slope(a);
      double t = 1.0;
      double next = a - step;
      double next_r = kNaN;
      for (int h = 0; h < 60; ++h, t *= 0.5) {
        next = a - t * step;
        if (next > lower) {
          next_r = residual(next);
          if (std::abs(next_r) < std::abs(r)) break;
        }
      }
      if (!(next > lower) || !std::isfinite(next_r)) break;
      a = next;
      r = next_r;
    }
    if (!(std::abs(r) <= kNewtonTolerance)) {
      throw ConvergenceError(name() + ": inverse gradient Newton solve did not converge", std::abs(r));
    }
    Eigen::VectorXd c(dim());
    c.head(packed_size(d_)) = pack_lower(-a * mean.llt().solve(Eigen::MatrixXd::Identity(d_, d_)));
    c[dim() - 1] = a - 0.5 * (d_ + 1);
    return c;
  }

  Eigen::VectorXd stat(std::span<const double> x) const override {
    Eigen::VectorXd packed = Eigen::Map<const Eigen::VectorXd>(x.data(), packed_size(d_));
    const Eigen::MatrixXd m = unpack_lower(packed, d_);
    Eigen::VectorXd t(dim());
    Eigen::LLT<Eigen::MatrixXd> llt(m);
    if (llt.info() != Eigen::Success || !(m.diagonal().minCoeff() > 0.0)) {
      t.setConstant(kNaN);
      return t;
    }
    t.head(packed_size(d_)) = pack_lower_doubled(m);
    t[dim() - 1] = 2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
    return t;
  }

  Eigen::VectorXd natural_from_source(const SourceParameter& s) const override {
    const auto* w = std::get_if<WishartSource>(&s);
    if (!w) throw std::invalid_argument("wishart family expects a WishartSource");
    if (w->scale.rows() != d_ || w->scale.cols() != d_) fail("scale shape does not match d=" + std::to_string(d_));
    if (!(w->dof > d_ - 1.0)) fail("degrees of freedom n = " + fmt(w->dof) + " must exceed d - 1");
    if (!is_symmetric(w->scale)) fail("scale matrix is not symmetric");
    if (auto v = spd_violation(w->scale, "scale matrix")) fail(*v);
    Eigen::VectorXd c(dim());
    c.head(packed_size(d_)) = pack_lower(-0.5 * w->scale.llt().solve(Eigen::MatrixXd::Identity(d_, d_)));
    c[dim() - 1] = 0.5 * (w->dof - d_ - 1);
    return c;
  }

  SourceParameter source_from_natural(const Eigen::VectorXd& c) const override {
    const Eigen::MatrixXd s = 0.5 * neg_theta1(c).llt().solve(Eigen::MatrixXd::Identity(d_, d_));
    return WishartSource{2.0 * c[dim() - 1] + d_ + 1, s};
  }

 private:
  int d_;
};

}  // namespace

// ---------------------------------------------------------------------------

std::string_view to_string(FamilyId id) {
  switch (id) {
    case FamilyId::categorical: return "categorical";
    case FamilyId::bernoulli: return "bernoulli";
    case FamilyId::gaussian: return "gaussian";
    case FamilyId::laplace: return "laplace";
    case FamilyId::wishart: return "wishart";
  }
  return "unknown";
}

FamilyId family_from_string(std::string_view name) {
  for (auto id : {FamilyId::categorical, FamilyId::bernoulli, FamilyId::gaussian, FamilyId::laplace,
                  FamilyId::wishart}) {
    if (to_string(id) == name) return id;
  }
  throw std::invalid_argument("unknown family '" + std::string(name) + "'");
}

NaturalParameter operator+(const NaturalParameter& a, const NaturalParameter& b) {
  require_same_family(a, b);
  return {a.family, a.coords + b.coords};
}

NaturalParameter operator-(const NaturalParameter& a, const NaturalParameter& b) {
  require_same_family(a, b);
  return {a.family, a.coords - b.coords};
}

NaturalParameter operator*(double s, const NaturalParameter& a) { return {a.family, s * a.coords}; }

NaturalParameter operator/(const NaturalParameter& a, double s) { return {a.family, a.coords / s}; }

NaturalParameter combine(double s, const NaturalParameter& a, double t, const NaturalParameter& b) {
  require_same_family(a, b);
  return {a.family, s * a.coords + t * b.coords};
}

double max_abs_diff(const NaturalParameter& a, const NaturalParameter& b) {
  require_same_family(a, b);
  return (a.coords - b.coords).cwiseAbs().maxCoeff();
}

Eigen::VectorXd pack_lower(const Eigen::MatrixXd& m) {
  const Eigen::Index d = m.rows();
  Eigen::VectorXd out(packed_size(d));
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) out[k++] = m(i, j);
  }
  return out;
}

Eigen::MatrixXd unpack_lower(const Eigen::VectorXd& packed, Eigen::Index d) {
  if (packed.size() != packed_size(d)) throw std::invalid_argument("packed matrix has wrong length");
  Eigen::MatrixXd m(d, d);
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) {
      m(i, j) = packed[k];
      m(j, i) = packed[k];
      ++k;
    }
  }
  return m;
}

double log_multigamma(double a, int d) {
  double s = 0.25 * d * (d - 1) * std::log(boost::math::constants::pi<double>());
  for (int j = 0; j < d; ++j) s += boost::math::lgamma(a - 0.5 * j);
  return s;
}

double multi_digamma(double a, int d) {
  double s = 0.0;
  for (int j = 0; j < d; ++j) s += boost::math::digamma(a - 0.5 * j);
  return s;
}

// ---------------------------------------------------------------------------

void ExponentialFamily::fail(const std::string& detail) const { throw DomainError(name_, detail); }

std::optional<std::string> ExponentialFamily::domain_violation(const NaturalParameter& theta) const {
  if (theta.family != id_) {
    return "parameter tagged " + std::string(to_string(theta.family)) + ", expected " + std::string(to_string(id_));
  }
  if (theta.coords.size() != dim_) {
    return "expected " + std::to_string(dim_) + " coordinates, got " + std::to_string(theta.coords.size());
  }
  return violation(theta.coords);
}

void ExponentialFamily::check_domain(const NaturalParameter& theta, std::string_view what) const {
  if (auto v = domain_violation(theta)) fail(std::string(what) + ": " + *v);
}

NaturalParameter ExponentialFamily::make(Eigen::VectorXd coords) const {
  NaturalParameter theta{id_, std::move(coords)};
  check_domain(theta);
  return theta;
}

double ExponentialFamily::log_normalizer(const NaturalParameter& theta) const {
  check_domain(theta);
  return F(theta.coords);
}

Eigen::VectorXd ExponentialFamily::grad_log_normalizer(const NaturalParameter& theta) const {
  check_domain(theta);
  return gradF(theta.coords);
}

NaturalParameter ExponentialFamily::inv_grad_log_normalizer(const Eigen::VectorXd& eta) const {
  if (eta.size() != dim_) fail("expectation parameter has wrong length");
  if (!eta.allFinite()) fail("expectation parameter has non-finite entries");
  NaturalParameter theta{id_, invGradF(eta)};
  check_domain(theta, "inverse gradient result");
  return theta;
}

Eigen::MatrixXd ExponentialFamily::hessian_log_normalizer(const NaturalParameter& theta) const {
  check_domain(theta);
  return hessF(theta.coords);
}

Eigen::MatrixXd ExponentialFamily::hessF(const Eigen::VectorXd& c) const {
  Eigen::MatrixXd h(dim_, dim_);
  for (Eigen::Index j = 0; j < dim_; ++j) {
    const double step = 1e-5 * std::max(1.0, std::abs(c[j]));
    Eigen::VectorXd up = c, down = c;
    up[j] += step;
    down[j] -= step;
    const bool up_ok = !violation(up);
    const bool down_ok = !violation(down);
    if (up_ok && down_ok) {
      h.col(j) = (gradF(up) - gradF(down)) / (2.0 * step);
    } else if (up_ok) {
      h.col(j) = (gradF(up) - gradF(c)) / step;
    } else if (down_ok) {
      h.col(j) = (gradF(c) - gradF(down)) / step;
    } else {
      fail("cannot difference the gradient near the domain boundary");
    }
  }
  return 0.5 * (h + h.transpose());
}

Eigen::VectorXd ExponentialFamily::sufficient_statistic(std::span<const double> x) const {
  if (static_cast<Eigen::Index>(x.size()) != sample_dim_) {
    throw std::invalid_argument(name_ + ": support point has wrong length");
  }
  return stat(x);
}

double ExponentialFamily::log_density_at(const NaturalParameter& theta, std::span<const double> x) const {
  check_domain(theta);
  const Eigen::VectorXd t = sufficient_statistic(x);
  if (t.hasNaN()) return -std::numeric_limits<double>::infinity();
  return theta.coords.dot(t) - F(theta.coords);
}

double ExponentialFamily::density_at(const NaturalParameter& theta, std::span<const double> x) const {
  return std::exp(log_density_at(theta, x));
}

double ExponentialFamily::power_integral(const NaturalParameter& theta, double gamma) const {
  if (!(gamma > 0.0)) throw std::invalid_argument("power_integral: gamma must be > 0");
  check_domain(theta);
  const NaturalParameter scaled = gamma * theta;
  check_domain(scaled, "gamma*theta");
  return std::exp(F(scaled.coords) - gamma * F(theta.coords));
}

NaturalParameter ExponentialFamily::escort_natural(const NaturalParameter& theta, double alpha) const {
  if (!(alpha > 0.0)) throw std::invalid_argument("escort_natural: alpha must be > 0");
  check_domain(theta);
  NaturalParameter escort = theta / alpha;
  check_domain(escort, "theta/alpha");
  return escort;
}

NaturalParameter ExponentialFamily::to_natural(const SourceParameter& source) const {
  NaturalParameter theta{id_, natural_from_source(source)};
  check_domain(theta, "converted source");
  return theta;
}

SourceParameter ExponentialFamily::from_natural(const NaturalParameter& theta) const {
  check_domain(theta);
  return source_from_natural(theta.coords);
}

// ---------------------------------------------------------------------------

FamilyPtr make_categorical(int m) {
  if (m < 1) throw std::invalid_argument("categorical family needs m >= 1");
  return std::make_shared<CategoricalFamily>(FamilyId::categorical, m);
}

FamilyPtr make_bernoulli() { return std::make_shared<CategoricalFamily>(FamilyId::bernoulli, 1); }

FamilyPtr make_gaussian(int d) {
  if (d < 1) throw std::invalid_argument("gaussian family needs d >= 1");
  return std::make_shared<GaussianFamily>(d);
}

FamilyPtr make_laplace() { return std::make_shared<LaplaceFamily>(); }

FamilyPtr make_wishart(int d) {
  if (d < 1) throw std::invalid_argument("wishart family needs d >= 1");
  return std::make_shared<WishartFamily>(d);
}

FamilyPtr family_for(const SourceParameter& source) {
  struct Visitor {
    FamilyPtr operator()(const CategoricalSource& s) const {
      return make_categorical(static_cast<int>(s.probs.size()) - 1);
    }
    FamilyPtr operator()(const BernoulliSource&) const { return make_bernoulli(); }
    FamilyPtr operator()(const GaussianSource& s) const { return make_gaussian(static_cast<int>(s.mean.size())); }
    FamilyPtr operator()(const LaplaceSource&) const { return make_laplace(); }
    FamilyPtr operator()(const WishartSource& s) const { return make_wishart(static_cast<int>(s.scale.rows())); }
  };
  return std::visit(Visitor{}, source);
}

}  // namespace holder
