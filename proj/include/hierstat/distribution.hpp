#pragma once

#include <functional>
#include <span>
#include <variant>
#include <vector>

#include "hierstat/gentile.hpp"
#include "hierstat/quadrature.hpp"

namespace hierstat {

/// All companies pay the same salary epsilon0.
struct Delta {
  double epsilon0;
};

/// Mass `weight` at epsilon1 and 1 - weight at epsilon2.
struct TwoPoint {
  double epsilon1;
  double epsilon2;
  double weight;
};

/// Uniform density on [a, b].
struct Uniform {
  double a;
  double b;
};

/// Piecewise-constant density: masses[i] spread evenly over [edges[i], edges[i+1]].
struct Histogram {
  std::vector<double> edges;
  std::vector<double> masses;
};

/// Density phi(eps) of companies over the salary (or cost) paid at one level.
/// Immutable; validated on construction (non-negative support, unit mass).
class SalaryDistribution {
 public:
  using Variant = std::variant<Delta, TwoPoint, Uniform, Histogram>;

  SalaryDistribution(Delta d);
  SalaryDistribution(TwoPoint t);
  SalaryDistribution(Uniform u);
  SalaryDistribution(Histogram h);

  const Variant& variant() const noexcept { return v_; }
  bool is_delta() const noexcept { return std::holds_alternative<Delta>(v_); }

  double support_min() const;
  double support_max() const;
  double mean() const;

  /// Integral of phi(eps) * g(eps). Atoms are evaluated exactly; continuous
  /// parts go through adaptive quadrature split at `breakpoints`.
  template <class G>
  double expect(const G& g, std::span<const double> breakpoints = {},
                const QuadratureOptions& options = {}) const;

 private:
  explicit SalaryDistribution(Variant v);
  Variant v_;
};

/// A salary distribution that may depend on the Gibbs parameters
/// themselves. Most callers use the fixed case, which converts implicitly.
class DistributionModel {
 public:
  using Family = std::function<SalaryDistribution(const GibbsParams&)>;

  DistributionModel(SalaryDistribution fixed);  // NOLINT(google-explicit-constructor)

  static DistributionModel parametric(Family family);

  SalaryDistribution at(const GibbsParams& params) const;
  bool depends_on_params() const noexcept { return static_cast<bool>(family_); }
  /// True for a fixed Delta distribution.
  bool is_fixed_delta() const noexcept;

 private:
  DistributionModel(SalaryDistribution fixed, Family family);
  SalaryDistribution fixed_;
  Family family_;
};

template <class G>
double SalaryDistribution::expect(const G& g, std::span<const double> breakpoints,
                                  const QuadratureOptions& options) const {
  struct Visitor {
    const G& g;
    std::span<const double> cuts;
    const QuadratureOptions& opt;

    double operator()(const Delta& d) const { return g(d.epsilon0); }
    double operator()(const TwoPoint& t) const {
      return t.weight * g(t.epsilon1) + (1.0 - t.weight) * g(t.epsilon2);
    }
    double operator()(const Uniform& u) const {
      return integrate(g, u.a, u.b, cuts, opt).value / (u.b - u.a);
    }
    double operator()(const Histogram& h) const {
      double total = 0.0;
      for (std::size_t i = 0; i < h.masses.size(); ++i) {
        if (h.masses[i] == 0.0) continue;
        const double width = h.edges[i + 1] - h.edges[i];
        total += h.masses[i] / width * integrate(g, h.edges[i], h.edges[i + 1], cuts, opt).value;
      }
      return total;
    }
  };
  return std::visit(Visitor{g, breakpoints, options}, v_);
}

}  // namespace hierstat
