#pragma once

#include <stdexcept>
#include <string>

namespace holder {

/// A natural parameter (or a combination of natural parameters required by a
/// formula) lies outside the family's natural parameter space.
class DomainError : public std::domain_error {
 public:
  DomainError(std::string family, std::string detail)
      : std::domain_error(family + ": out of domain: " + detail),
        family_(std::move(family)),
        detail_(std::move(detail)) {}

  const std::string& family() const noexcept { return family_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::string family_;
  std::string detail_;
};

/// An iterative solver (Newton, bisection, inner CCCP solve) did not reach
/// its tolerance within the configured iteration budget.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double residual)
      : std::runtime_error(what + " (residual " + std::to_string(residual) + ")"),
        residual_(residual) {}

  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// Adaptive quadrature gave up before meeting its tolerance.
class IntegrationError : public std::runtime_error {
 public:
  IntegrationError(double estimate, double error_bound)
      : std::runtime_error("quadrature did not converge: estimate " + std::to_string(estimate) +
                           ", error bound " + std::to_string(error_bound)),
        estimate_(estimate),
        error_bound_(error_bound) {}

  double estimate() const noexcept { return estimate_; }
  double error_bound() const noexcept { return error_bound_; }

 private:
  double estimate_;
  double error_bound_;
};

}  // namespace holder
