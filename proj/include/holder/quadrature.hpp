#pragma once

#include <functional>
#include <span>

namespace holder {

/// Closed or half-open interval; endpoints may be infinite.
struct Interval {
  double lower;
  double upper;
};

struct QuadratureSettings {
  double abs_tolerance = 1e-10;
  double rel_tolerance = 1e-12;
  /// Maximum bisection depth of the adaptive Gauss-Kronrod refinement.
  unsigned max_depth = 25;
};

/// Adaptive 61-point Gauss-Kronrod integration of `f` over `support`.
///
/// The support is split at `breakpoints` (points outside it are ignored) so
/// that narrow peaks and kinks sit on panel boundaries. Infinite endpoints are
/// handled by a change of variables. Throws IntegrationError when the
/// estimated error exceeds max(abs_tolerance, rel_tolerance * |integral|).
double quadrature(const std::function<double(double)>& f, Interval support,
                  std::span<const double> breakpoints = {}, const QuadratureSettings& settings = {});

}  // namespace holder
