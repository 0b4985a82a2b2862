#pragma once

// Conic and affine exponential families with a zero carrier term:
//
//   p(x; theta) = exp(<theta, t(x)> - F(theta))
//
// Natural parameters are stored as flat coordinate vectors. Symmetric matrix
// blocks are packed as their lower triangle in row-major order
// ((0,0), (1,0), (1,1), (2,0), ...). The sufficient statistic doubles the
// off-diagonal entries so that <theta, t(x)> equals the matrix inner product.

#include <Eigen/Dense>

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>

namespace holder {

enum class FamilyId { categorical, bernoulli, gaussian, laplace, wishart };

std::string_view to_string(FamilyId id);
FamilyId family_from_string(std::string_view name);

struct NaturalParameter {
  FamilyId family;
  Eigen::VectorXd coords;
};

NaturalParameter operator+(const NaturalParameter& a, const NaturalParameter& b);
NaturalParameter operator-(const NaturalParameter& a, const NaturalParameter& b);
NaturalParameter operator*(double s, const NaturalParameter& a);
NaturalParameter operator/(const NaturalParameter& a, double s);

/// s*a + t*b, the combination every closed form is built from.
NaturalParameter combine(double s, const NaturalParameter& a, double t, const NaturalParameter& b);

/// Largest absolute coordinate difference.
double max_abs_diff(const NaturalParameter& a, const NaturalParameter& b);

// Source (moment-style) parameterizations.
struct CategoricalSource {
  Eigen::VectorXd probs;  // (p_0, ..., p_m), full simplex vector
};
struct BernoulliSource {
  double p1;
};
struct GaussianSource {
  Eigen::VectorXd mean;
  Eigen::MatrixXd cov;
};
struct LaplaceSource {
  double sigma;
};
struct WishartSource {
  double dof;             // n > d - 1
  Eigen::MatrixXd scale;  // S
};

using SourceParameter =
    std::variant<CategoricalSource, BernoulliSource, GaussianSource, LaplaceSource, WishartSource>;

/// Packs the lower triangle of a symmetric matrix (row-major).
Eigen::VectorXd pack_lower(const Eigen::MatrixXd& m);
/// Inverse of pack_lower.
Eigen::MatrixXd unpack_lower(const Eigen::VectorXd& packed, Eigen::Index d);
inline Eigen::Index packed_size(Eigen::Index d) { return d * (d + 1) / 2; }

/// An exponential family with its Legendre calculus. Instances are immutable
/// and can be shared between threads.
///
/// The public entry points validate the domain and throw DomainError naming
/// the offending coordinate; the protected hooks assume valid input.
class ExponentialFamily {
 public:
  virtual ~ExponentialFamily() = default;

  FamilyId id() const noexcept { return id_; }
  /// Length of the natural coordinate vector.
  Eigen::Index dim() const noexcept { return dim_; }
  /// Length of an encoded support point (category index, x, packed matrix).
  Eigen::Index sample_dim() const noexcept { return sample_dim_; }
  /// Human readable tag, e.g. "gaussian(d=2)".
  const std::string& name() const noexcept { return name_; }

  /// Empty when theta is in the (open) natural parameter space, otherwise a
  /// description of the violated constraint.
  std::optional<std::string> domain_violation(const NaturalParameter& theta) const;
  bool in_domain(const NaturalParameter& theta) const { return !domain_violation(theta); }
  /// Throws DomainError; `what` names the parameter combination being checked.
  void check_domain(const NaturalParameter& theta, std::string_view what = "theta") const;

  /// Wraps coordinates with this family's tag and validates them.
  NaturalParameter make(Eigen::VectorXd coords) const;

  double log_normalizer(const NaturalParameter& theta) const;
  Eigen::VectorXd grad_log_normalizer(const NaturalParameter& theta) const;
  NaturalParameter inv_grad_log_normalizer(const Eigen::VectorXd& eta) const;
  Eigen::MatrixXd hessian_log_normalizer(const NaturalParameter& theta) const;

  Eigen::VectorXd sufficient_statistic(std::span<const double> x) const;
  double log_density_at(const NaturalParameter& theta, std::span<const double> x) const;
  double density_at(const NaturalParameter& theta, std::span<const double> x) const;

  /// Integral of p(x; theta)^gamma, exp(F(gamma theta) - gamma F(theta)).
  double power_integral(const NaturalParameter& theta, double gamma) const;
  /// Natural parameter of the escort density proportional to p^(1/alpha).
  NaturalParameter escort_natural(const NaturalParameter& theta, double alpha) const;

  NaturalParameter to_natural(const SourceParameter& source) const;
  SourceParameter from_natural(const NaturalParameter& theta) const;

 protected:
  ExponentialFamily(FamilyId id, Eigen::Index dim, Eigen::Index sample_dim, std::string name)
      : id_(id), dim_(dim), sample_dim_(sample_dim), name_(std::move(name)) {}

  virtual std::optional<std::string> violation(const Eigen::VectorXd& c) const = 0;
  virtual double F(const Eigen::VectorXd& c) const = 0;
  virtual Eigen::VectorXd gradF(const Eigen::VectorXd& c) const = 0;
  virtual Eigen::VectorXd invGradF(const Eigen::VectorXd& eta) const = 0;
  /// Defaults to central differences of gradF.
  virtual Eigen::MatrixXd hessF(const Eigen::VectorXd& c) const;
  /// NaN when x lies outside the support.
  virtual Eigen::VectorXd stat(std::span<const double> x) const = 0;
  virtual Eigen::VectorXd natural_from_source(const SourceParameter& s) const = 0;
  virtual SourceParameter source_from_natural(const Eigen::VectorXd& c) const = 0;

  [[noreturn]] void fail(const std::string& detail) const;

 private:
  FamilyId id_;
  Eigen::Index dim_;
  Eigen::Index sample_dim_;
  std::string name_;
};

using FamilyPtr = std::shared_ptr<const ExponentialFamily>;

/// Categorical over m+1 outcomes; coordinates theta_i = log(p_i / p_0).
FamilyPtr make_categorical(int m);
FamilyPtr make_bernoulli();
/// Multivariate normal; coordinates (v, lower(M)) with v = inv(Sigma) mu,
/// M = -inv(Sigma)/2.
FamilyPtr make_gaussian(int d);
/// Zero-centered Laplace; theta = -1/sigma.
FamilyPtr make_laplace();
/// Wishart on d x d positive definite matrices; coordinates
/// (lower(theta1), theta2) with theta1 = -inv(S)/2, theta2 = (n - d - 1)/2.
FamilyPtr make_wishart(int d);

/// Family matching a source parameter's kind and dimension.
FamilyPtr family_for(const SourceParameter& source);

/// Multivariate log-gamma, log Gamma_d(a).
double log_multigamma(double a, int d);
/// Multivariate digamma, d/da log Gamma_d(a).
double multi_digamma(double a, int d);

}  // namespace holder
