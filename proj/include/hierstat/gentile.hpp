#pragma once

// Single-level Gibbs statistics: partition function, occupancy distribution
// and the Gentile mean occupation of a level holding at most d elements.

#include <cstdint>
#include <vector>

namespace hierstat {

using Capacity = std::int64_t;

/// Whether the per-element money amount enters the energy as a cost
/// (E = +eps*r, apartments) or as a salary / well depth (E = -eps*r).
enum class EnergySign { Cost, Salary };

/// One hierarchical level: d identical positions, money scale eps.
class OccupancyLevel {
 public:
  OccupancyLevel(Capacity capacity, double money_scale, EnergySign sign = EnergySign::Salary);

  Capacity capacity() const noexcept { return capacity_; }
  double money_scale() const noexcept { return money_scale_; }
  EnergySign sign() const noexcept { return sign_; }

 private:
  Capacity capacity_;
  double money_scale_;
  EnergySign sign_;
};

/// Lagrange pair of the grand-canonical Gibbs weight exp(alpha*r - beta*E).
/// beta is in inverse currency units and strictly positive.
class GibbsParams {
 public:
  GibbsParams(double alpha, double beta);

  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }

  friend bool operator==(const GibbsParams&, const GibbsParams&) = default;

 private:
  double alpha_;
  double beta_;
};

/// Per-element exponent lambda of the weight exp(lambda*r).
struct Activity {
  explicit Activity(double value);
  double value;
};

/// Probabilities p(r), r = 0..d.
struct OccupancyPmf {
  std::vector<double> probabilities;

  double mean() const;
};

/// lambda = alpha - beta*eps (Cost) or alpha + beta*eps (Salary).
Activity activity(const OccupancyLevel& level, const GibbsParams& params);

/// Z = sum_{r=0}^{d} exp(lambda*r). Throws DomainError when Z overflows;
/// use log_partition_single in that regime.
double partition_single(Capacity d, Activity lambda);
double partition_single(const OccupancyLevel& level, Activity lambda);

/// ln Z, finite for every finite lambda. Equals the per-company pressure
/// generator omega for a single salary value.
double log_partition_single(Capacity d, Activity lambda);

OccupancyPmf occupancy_pmf(Capacity d, Activity lambda);
OccupancyPmf occupancy_pmf(const OccupancyLevel& level, Activity lambda);

/// Gentile mean occupation
///   f_G = 1/(e^{-lambda} - 1) - (d+1)/(e^{-lambda(d+1)} - 1),
/// evaluated with expm1, the particle-hole reflection f_G(l) = d - f_G(-l)
/// for lambda > 0, and a series around lambda = 0 where both terms diverge.
double mean_occupancy(Capacity d, Activity lambda);
double mean_occupancy(const OccupancyLevel& level, Activity lambda);

/// d f_G / d lambda, i.e. the variance of r under occupancy_pmf.
double occupancy_variance(Capacity d, Activity lambda);

/// Reference evaluation of f_G by direct compensated summation over
/// r = 0..d. O(d); meant for cross-checks, never substituted silently.
double mean_occupancy_direct_sum(Capacity d, Activity lambda);

/// 1/(e^{-lambda} + 1); the d = 1 case of mean_occupancy.
double fermi_dirac(Activity lambda);

/// 1/(e^{-lambda} - 1); the d -> infinity limit. Requires lambda < 0.
double bose_einstein(Activity lambda);

}  // namespace hierstat
