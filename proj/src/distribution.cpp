#include "hierstat/distribution.hpp"

#include <cmath>
#include <string>

#include "detail/summation.hpp"
#include "hierstat/errors.hpp"

namespace hierstat {

namespace {

constexpr double kMassTolerance = 1e-12;

bool nonneg_finite(double x) { return std::isfinite(x) && x >= 0.0; }

void validate(const Delta& d, Violations& v) {
  v.check(nonneg_finite(d.epsilon0), "delta: epsilon0 must be finite and >= 0");
}

void validate(const TwoPoint& t, Violations& v) {
  v.check(nonneg_finite(t.epsilon1), "two_point: epsilon1 must be finite and >= 0");
  v.check(nonneg_finite(t.epsilon2), "two_point: epsilon2 must be finite and >= 0");
  v.check(t.weight > 0.0 && t.weight < 1.0, "two_point: weight must lie in (0, 1)");
}

void validate(const Uniform& u, Violations& v) {
  v.check(nonneg_finite(u.a), "uniform: a must be finite and >= 0");
  v.check(std::isfinite(u.b) && u.a < u.b, "uniform: requires a < b");
}

void validate(const Histogram& h, Violations& v) {
  v.check(h.edges.size() >= 2, "histogram: needs at least two edges");
  v.check(h.masses.size() + 1 == h.edges.size(), "histogram: masses must have edges-1 entries");
  if (h.edges.empty()) return;
  v.check(nonneg_finite(h.edges.front()), "histogram: edges must be finite and >= 0");
  for (std::size_t i = 0; i + 1 < h.edges.size(); ++i) {
    if (!(std::isfinite(h.edges[i + 1]) && h.edges[i] < h.edges[i + 1])) {
      v.check(false, "histogram: edges must be strictly increasing (at index " +
                         std::to_string(i + 1) + ")");
      break;
    }
  }
  detail::CompensatedSum total;
  bool nonneg = true;
  for (double m : h.masses) {
    nonneg = nonneg && nonneg_finite(m);
    total.add(m);
  }
  v.check(nonneg, "histogram: masses must be finite and >= 0");
  v.check(std::fabs(total.value() - 1.0) <= kMassTolerance, "histogram: masses must sum to 1");
}

}  // namespace

SalaryDistribution::SalaryDistribution(Variant v) : v_(std::move(v)) {
  Violations errors;
  std::visit([&](const auto& x) { validate(x, errors); }, v_);
  errors.throw_if_any();
}

SalaryDistribution::SalaryDistribution(Delta d) : SalaryDistribution(Variant{d}) {}
SalaryDistribution::SalaryDistribution(TwoPoint t) : SalaryDistribution(Variant{t}) {}
SalaryDistribution::SalaryDistribution(Uniform u) : SalaryDistribution(Variant{u}) {}
SalaryDistribution::SalaryDistribution(Histogram h) : SalaryDistribution(Variant{std::move(h)}) {}

double SalaryDistribution::support_min() const {
  struct {
    double operator()(const Delta& d) const { return d.epsilon0; }
    double operator()(const TwoPoint& t) const { return std::min(t.epsilon1, t.epsilon2); }
    double operator()(const Uniform& u) const { return u.a; }
    double operator()(const Histogram& h) const {
      for (std::size_t i = 0; i < h.masses.size(); ++i) {
        if (h.masses[i] > 0.0) return h.edges[i];
      }
      return h.edges.front();
    }
  } visitor;
  return std::visit(visitor, v_);
}

double SalaryDistribution::support_max() const {
  struct {
    double operator()(const Delta& d) const { return d.epsilon0; }
    double operator()(const TwoPoint& t) const { return std::max(t.epsilon1, t.epsilon2); }
    double operator()(const Uniform& u) const { return u.b; }
    double operator()(const Histogram& h) const {
      for (std::size_t i = h.masses.size(); i-- > 0;) {
        if (h.masses[i] > 0.0) return h.edges[i + 1];
      }
      return h.edges.back();
    }
  } visitor;
  return std::visit(visitor, v_);
}

double SalaryDistribution::mean() const {
  struct {
    double operator()(const Delta& d) const { return d.epsilon0; }
    double operator()(const TwoPoint& t) const {
      return t.weight * t.epsilon1 + (1.0 - t.weight) * t.epsilon2;
    }
    double operator()(const Uniform& u) const { return 0.5 * (u.a + u.b); }
    double operator()(const Histogram& h) const {
      double m = 0.0;
      for (std::size_t i = 0; i < h.masses.size(); ++i) {
        m += h.masses[i] * 0.5 * (h.edges[i] + h.edges[i + 1]);
      }
      return m;
    }
  } visitor;
  return std::visit(visitor, v_);
}

DistributionModel::DistributionModel(SalaryDistribution fixed) : fixed_(std::move(fixed)) {}

DistributionModel::DistributionModel(SalaryDistribution fixed, Family family)
    : fixed_(std::move(fixed)), family_(std::move(family)) {}

DistributionModel DistributionModel::parametric(Family family) {
  if (!family) throw ValidationError("parametric distribution needs a family");
  // fixed_ is a placeholder; at() always consults the family.
  return DistributionModel(SalaryDistribution(Delta{0.0}), std::move(family));
}

SalaryDistribution DistributionModel::at(const GibbsParams& params) const {
  return family_ ? family_(params) : fixed_;
}

bool DistributionModel::is_fixed_delta() const noexcept {
  return !family_ && fixed_.is_delta();
}

}  // namespace hierstat
