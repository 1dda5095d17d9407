#pragma once

// Adaptive composite Gauss-Legendre quadrature on a bounded interval.
//
// Each panel is compared against the sum over its two halves; the panel
// with the largest disagreement is bisected until the total meets the
// tolerance, up to a fixed depth. Callers may pass interior breakpoints (points where the
// integrand changes evaluation branch) so that no panel straddles them.

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <queue>
#include <span>
#include <vector>

#include "hierstat/errors.hpp"

namespace hierstat {

struct QuadratureOptions {
  double rel_tol = 1e-10;
  int max_depth = 20;
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int panels = 0;
};

namespace detail {

template <std::size_t N>
struct GaussLegendreRule {
  std::array<double, N> nodes{};
  std::array<double, N> weights{};

  GaussLegendreRule() {
    // Newton iteration on P_N starting from the Chebyshev-like guess.
    for (std::size_t i = 0; i < (N + 1) / 2; ++i) {
      double z = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                          (static_cast<double>(N) + 0.5));
      double dp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p1 = 1.0;
        double p2 = 0.0;
        for (std::size_t j = 1; j <= N; ++j) {
          const double p3 = p2;
          p2 = p1;
          const double jj = static_cast<double>(j);
          p1 = ((2.0 * jj - 1.0) * z * p2 - (jj - 1.0) * p3) / jj;
        }
        dp = static_cast<double>(N) * (z * p1 - p2) / (z * z - 1.0);
        const double dz = p1 / dp;
        z -= dz;
        if (std::fabs(dz) < 1e-16) break;
      }
      const double w = 2.0 / ((1.0 - z * z) * dp * dp);
      nodes[i] = -z;
      nodes[N - 1 - i] = z;
      weights[i] = w;
      weights[N - 1 - i] = w;
    }
  }
};

inline const GaussLegendreRule<10>& gauss_legendre_10() {
  static const GaussLegendreRule<10> rule;
  return rule;
}

struct PanelSums {
  double value;
  double magnitude;  // integral of |f|, used to scale the tolerance
};

template <class F>
PanelSums gauss_panel(const F& f, double a, double b) {
  const auto& rule = gauss_legendre_10();
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  double s = 0.0;
  double m = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double y = f(mid + half * rule.nodes[i]);
    s += rule.weights[i] * y;
    m += rule.weights[i] * std::fabs(y);
  }
  return {s * half, m * half};
}

// A panel with its two-half estimate and the coarse/fine disagreement.
struct Panel {
  double a;
  double b;
  double left;
  double right;
  double error;
  int depth;

  double value() const { return left + right; }
  bool operator<(const Panel& o) const { return error < o.error; }
};

template <class F>
Panel make_panel(const F& f, double a, double b, double coarse, int depth) {
  const double m = 0.5 * (a + b);
  const double left = gauss_panel(f, a, m).value;
  const double right = gauss_panel(f, m, b).value;
  return {a, b, left, right, std::fabs(left + right - coarse), depth};
}

}  // namespace detail

/// Integrate f over [a, b], splitting at the given breakpoints (those
/// outside (a, b) are ignored). Throws AccuracyError carrying the estimate
/// and error bound when max_depth is reached without meeting rel_tol.
template <class F>
QuadratureResult integrate(const F& f, double a, double b, std::span<const double> breakpoints = {},
                           const QuadratureOptions& options = {}) {
  if (!(a < b)) return {};
  std::vector<double> cuts{a};
  for (double x : breakpoints) {
    if (x > a && x < b) cuts.push_back(x);
  }
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::vector<detail::PanelSums> coarse;
  double magnitude = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    coarse.push_back(detail::gauss_panel(f, cuts[i], cuts[i + 1]));
    magnitude += coarse.back().magnitude;
  }
  const double total_tol = std::max(options.rel_tol * magnitude, 1e-300);

  // Globally adaptive: keep bisecting the panel with the largest error
  // until the summed error meets the tolerance. A kink then costs a few
  // extra levels instead of an unreachable per-panel target.
  std::priority_queue<detail::Panel> heap;
  double error = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const auto p = detail::make_panel(f, cuts[i], cuts[i + 1], coarse[i].value, 1);
    error += p.error;
    heap.push(p);
  }
  bool converged = true;
  while (error > total_tol) {
    const detail::Panel worst = heap.top();
    const double m = 0.5 * (worst.a + worst.b);
    if (worst.depth >= options.max_depth || m <= worst.a || m >= worst.b) {
      converged = false;
      break;
    }
    heap.pop();
    error -= worst.error;
    const auto l = detail::make_panel(f, worst.a, m, worst.left, worst.depth + 1);
    const auto r = detail::make_panel(f, m, worst.b, worst.right, worst.depth + 1);
    heap.push(l);
    heap.push(r);
    error += l.error + r.error;
  }
  // Re-add from scratch; the running total drifts after many subtractions.
  error = 0.0;
  int panels = 0;
  std::vector<double> parts;
  while (!heap.empty()) {
    parts.push_back(heap.top().value());
    error += heap.top().error;
    heap.pop();
    panels += 2;
  }
  double value = 0.0;
  // Sum small contributions first.
  std::sort(parts.begin(), parts.end(), [](double x, double y) { return std::fabs(x) < std::fabs(y); });
  for (double x : parts) value += x;
  if (!converged) throw AccuracyError(value, error);
  return {value, error, panels};
}

}  // namespace hierstat
