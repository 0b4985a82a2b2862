#include "holder/quadrature.hpp"

#include "holder/error.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

namespace holder {

namespace {

using Rule = boost::math::quadrature::gauss_kronrod<double, 61>;
using Embedded = boost::math::quadrature::gauss<double, 30>;

// Panels beyond this count mean the tolerance is out of reach.
constexpr std::size_t kMaxPanels = 20000;

struct Panel {
  double a;
  double b;
  double value;
  double error;
  unsigned depth;
  bool operator<(const Panel& other) const { return error < other.error; }
};

// Semi-infinite pieces are mapped onto [0, 1) by x = origin +- t / (1 - t).
std::function<double(double)> mapped(const std::function<double(double)>& f, double origin, double direction) {
  return [&f, origin, direction](double t) {
    if (t >= 1.0) return 0.0;
    const double s = 1.0 - t;
    const double v = f(origin + direction * t / s);
    return v == 0.0 ? 0.0 : v / (s * s);
  };
}

// The Kronrod estimate with |K61 - G30| as its error, floored relative to
// the panel's own value so that the floor shrinks under subdivision.
Panel apply(const std::function<double(double)>& g, double a, double b, unsigned depth) {
  const double value = Rule::integrate(g, a, b, 0, 0.0);
  const double coarse = Embedded::integrate(g, a, b);
  const double error = std::max(std::abs(value - coarse), 50.0 * std::numeric_limits<double>::epsilon() * std::abs(value));
  return {a, b, value, error, depth};
}

}  // namespace

double quadrature(const std::function<double(double)>& f, Interval support,
                  std::span<const double> breakpoints, const QuadratureSettings& settings) {
  if (!(support.lower < support.upper)) return 0.0;

  std::vector<double> cuts;
  for (double b : breakpoints) {
    if (std::isfinite(b) && b > support.lower && b < support.upper) cuts.push_back(b);
  }
  if (cuts.empty() && !std::isfinite(support.lower) && !std::isfinite(support.upper)) cuts.push_back(0.0);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  // Each piece is integrated in its own variable; panels remember which.
  std::vector<std::function<double(double)>> pieces;
  std::vector<std::pair<double, double>> ranges;
  auto add_finite = [&](double a, double b) {
    pieces.push_back(f);
    ranges.emplace_back(a, b);
  };
  const double first = cuts.empty() ? support.upper : cuts.front();
  const double last = cuts.empty() ? support.lower : cuts.back();
  if (!std::isfinite(support.lower)) {
    pieces.push_back(mapped(f, first, -1.0));
    ranges.emplace_back(0.0, 1.0);
  } else if (!cuts.empty()) {
    add_finite(support.lower, first);
  }
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) add_finite(cuts[i], cuts[i + 1]);
  if (!std::isfinite(support.upper)) {
    pieces.push_back(mapped(f, last, 1.0));
    ranges.emplace_back(0.0, 1.0);
  } else if (!cuts.empty()) {
    add_finite(last, support.upper);
  }
  if (cuts.empty() && std::isfinite(support.lower) && std::isfinite(support.upper)) {
    add_finite(support.lower, support.upper);
  }

  struct Entry {
    Panel panel;
    std::size_t piece;
    bool operator<(const Entry& other) const { return panel < other.panel; }
  };
  std::priority_queue<Entry> queue;
  std::vector<Panel> settled;
  double total = 0.0;
  double total_error = 0.0;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const Panel p = apply(pieces[i], ranges[i].first, ranges[i].second, 0);
    total += p.value;
    total_error += p.error;
    queue.push({p, i});
  }

  auto target = [&] { return std::max(settings.abs_tolerance, settings.rel_tolerance * std::abs(total)); };
  while (total_error > target() && !queue.empty() && queue.size() + settled.size() < kMaxPanels) {
    const Entry worst = queue.top();
    queue.pop();
    if (worst.panel.depth >= settings.max_depth) {
      settled.push_back(worst.panel);
      continue;
    }
    const double mid = 0.5 * (worst.panel.a + worst.panel.b);
    const Panel left = apply(pieces[worst.piece], worst.panel.a, mid, worst.panel.depth + 1);
    const Panel right = apply(pieces[worst.piece], mid, worst.panel.b, worst.panel.depth + 1);
    total += left.value + right.value - worst.panel.value;
    total_error += left.error + right.error - worst.panel.error;
    queue.push({left, worst.piece});
    queue.push({right, worst.piece});
  }

  // Recompute the sums from the final panels to shed accumulated rounding.
  total = 0.0;
  total_error = 0.0;
  for (const Panel& p : settled) {
    total += p.value;
    total_error += p.error;
  }
  while (!queue.empty()) {
    total += queue.top().panel.value;
    total_error += queue.top().panel.error;
    queue.pop();
  }
  if (!std::isfinite(total) || total_error > target()) throw IntegrationError(total, total_error);
  return total;
}

}  // namespace holder
