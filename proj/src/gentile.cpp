#include "hierstat/gentile.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "detail/summation.hpp"
#include "hierstat/errors.hpp"

namespace hierstat {

namespace {

// Series branches in x = |lambda|*(d+1). The closed form of f_G loses about
// 2*eps/x relative accuracy to cancellation between its poles; the series
// through lambda^5 truncates at ~2e-6*x^7. For the variance the closed form
// loses ~12*eps/x^2 and the series through lambda^6 truncates at ~2e-6*x^8.
constexpr double kMeanSeriesThreshold = 1e-2;
constexpr double kVarianceSeriesThreshold = 1e-1;

// Even cumulants of the discrete uniform law on {0..n-1}:
// k_2m = B_2m (n^2m - 1) / 2m.
struct UniformCumulants {
  explicit UniformCumulants(double n) {
    const double n2 = n * n;
    const double n4 = n2 * n2;
    k2 = (n2 - 1.0) / 12.0;
    k4 = -(n4 - 1.0) / 120.0;
    k6 = (n4 * n2 - 1.0) / 252.0;
    k8 = -(n4 * n4 - 1.0) / 240.0;
  }
  double k2, k4, k6, k8;
};

void require_capacity(Capacity d) {
  if (d < 1) throw ValidationError("capacity must be >= 1, got " + std::to_string(d));
}

// ln(1 - e^x) for x < 0.
double log1mexp(double x) {
  return x > -std::log(2.0) ? std::log(-std::expm1(x)) : std::log1p(-std::exp(x));
}

// f_G for lambda <= 0.
double mean_occupancy_nonpositive(Capacity d, double lambda) {
  const double n = static_cast<double>(d) + 1.0;
  const double x = -lambda * n;
  if (x < kMeanSeriesThreshold) {
    // ln Z = ln n + lambda d/2 + sum_m k_2m lambda^2m / (2m)!, differentiated.
    const UniformCumulants k(n);
    const double l2 = lambda * lambda;
    return 0.5 * static_cast<double>(d) +
           lambda * (k.k2 + l2 * (k.k4 / 6.0 + l2 * k.k6 / 120.0));
  }
  return 1.0 / std::expm1(-lambda) - n / std::expm1(x);
}

}  // namespace

OccupancyLevel::OccupancyLevel(Capacity capacity, double money_scale, EnergySign sign)
    : capacity_(capacity), money_scale_(money_scale), sign_(sign) {
  Violations v;
  v.check(capacity >= 1, "capacity must be >= 1");
  v.check(std::isfinite(money_scale) && money_scale >= 0.0, "money scale must be finite and >= 0");
  v.throw_if_any();
}

GibbsParams::GibbsParams(double alpha, double beta) : alpha_(alpha), beta_(beta) {
  Violations v;
  v.check(std::isfinite(alpha), "alpha must be finite");
  v.check(std::isfinite(beta) && beta > 0.0, "beta must be finite and > 0");
  v.throw_if_any();
}

Activity::Activity(double value) : value(value) {
  if (!std::isfinite(value)) throw ValidationError("activity lambda must be finite");
}

double OccupancyPmf::mean() const {
  detail::CompensatedSum s;
  for (std::size_t r = 0; r < probabilities.size(); ++r) {
    s.add(static_cast<double>(r) * probabilities[r]);
  }
  return s.value();
}

Activity activity(const OccupancyLevel& level, const GibbsParams& params) {
  const double shift = params.beta() * level.money_scale();
  return Activity(level.sign() == EnergySign::Cost ? params.alpha() - shift
                                                   : params.alpha() + shift);
}

double log_partition_single(Capacity d, Activity lambda) {
  require_capacity(d);
  const double l = lambda.value;
  const double n = static_cast<double>(d) + 1.0;
  if (l == 0.0) return std::log(n);
  if (l > 0.0) {
    // Z(l) = e^{l d} Z(-l)
    return l * static_cast<double>(d) + log_partition_single(d, Activity(-l));
  }
  return log1mexp(l * n) - log1mexp(l);
}

double partition_single(Capacity d, Activity lambda) {
  require_capacity(d);
  const double l = lambda.value;
  if (l == 0.0) return static_cast<double>(d) + 1.0;
  if (l < 0.0) {
    // 1 <= Z <= d+1 here; the expm1 ratio is accurate to a few ulps.
    return std::expm1(l * (static_cast<double>(d) + 1.0)) / std::expm1(l);
  }
  const double z = std::exp(log_partition_single(d, lambda));
  if (!std::isfinite(z)) {
    throw DomainError("partition function overflows double; use log_partition_single");
  }
  return z;
}

double partition_single(const OccupancyLevel& level, Activity lambda) {
  return partition_single(level.capacity(), lambda);
}

OccupancyPmf occupancy_pmf(Capacity d, Activity lambda) {
  require_capacity(d);
  const double l = lambda.value;
  const double peak = l > 0.0 ? l * static_cast<double>(d) : 0.0;
  std::vector<double> p(static_cast<std::size_t>(d) + 1);
  detail::CompensatedSum total;
  for (std::size_t r = 0; r < p.size(); ++r) {
    p[r] = std::exp(l * static_cast<double>(r) - peak);
    total.add(p[r]);
  }
  const double z = total.value();
  for (double& x : p) x /= z;
  return OccupancyPmf{std::move(p)};
}

OccupancyPmf occupancy_pmf(const OccupancyLevel& level, Activity lambda) {
  return occupancy_pmf(level.capacity(), lambda);
}

double mean_occupancy(Capacity d, Activity lambda) {
  require_capacity(d);
  const double l = lambda.value;
  if (l > 0.0) return static_cast<double>(d) - mean_occupancy_nonpositive(d, -l);
  return mean_occupancy_nonpositive(d, l);
}

double mean_occupancy(const OccupancyLevel& level, Activity lambda) {
  return mean_occupancy(level.capacity(), lambda);
}

double occupancy_variance(Capacity d, Activity lambda) {
  require_capacity(d);
  const double l = std::fabs(lambda.value);  // even in lambda
  const double n = static_cast<double>(d) + 1.0;
  const double x = l * n;
  if (x < kVarianceSeriesThreshold) {
    const UniformCumulants k(n);
    const double l2 = l * l;
    return k.k2 + l2 * (k.k4 / 2.0 + l2 * (k.k6 / 24.0 + l2 * k.k8 / 720.0));
  }
  const double s1 = std::sinh(0.5 * l);
  const double sn = std::sinh(0.5 * x);
  const double first = 0.25 / (s1 * s1);
  // sinh overflows to inf for large x; the second term then vanishes.
  const double second = std::isfinite(sn) ? 0.25 * n * n / (sn * sn) : 0.0;
  return first - second;
}

double mean_occupancy_direct_sum(Capacity d, Activity lambda) {
  require_capacity(d);
  const double l = lambda.value;
  const double peak = l > 0.0 ? l * static_cast<double>(d) : 0.0;
  detail::CompensatedSum weights;
  detail::CompensatedSum moments;
  for (Capacity r = 0; r <= d; ++r) {
    const double rr = static_cast<double>(r);
    const double w = std::exp(l * rr - peak);
    weights.add(w);
    moments.add(rr * w);
  }
  return moments.value() / weights.value();
}

double fermi_dirac(Activity lambda) {
  const double l = lambda.value;
  // Evaluate on the side where the exponential cannot overflow.
  if (l >= 0.0) return 1.0 / (std::exp(-l) + 1.0);
  const double e = std::exp(l);
  return e / (1.0 + e);
}

double bose_einstein(Activity lambda) {
  if (!(lambda.value < 0.0)) {
    throw DomainError("Bose-Einstein occupation diverges for lambda >= 0; use a finite capacity");
  }
  return 1.0 / std::expm1(-lambda.value);
}

}  // namespace hierstat
