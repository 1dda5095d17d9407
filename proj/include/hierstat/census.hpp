#pragma once

#include <span>
#include <vector>

#include "hierstat/gentile.hpp"

namespace hierstat {

/// Counts v[r][s] of companies whose level holds exactly r elements and pays
/// salary eps_s. Counts are real so that the Gentile (most probable) census
/// can be represented without rounding.
class EnsembleCensus {
 public:
  /// counts[s][r], r = 0..d for every salary class s.
  EnsembleCensus(std::vector<double> salaries, std::vector<std::vector<double>> counts);

  std::size_t classes() const noexcept { return salaries_.size(); }
  Capacity capacity() const noexcept { return capacity_; }
  double salary(std::size_t s) const { return salaries_.at(s); }
  double count(std::size_t r, std::size_t s) const { return counts_.at(s).at(r); }
  const std::vector<std::vector<double>>& counts() const noexcept { return counts_; }

  double volume(std::size_t s) const;    // V_s
  double elements(std::size_t s) const;  // N_s
  double total_volume() const;           // V
  double total_elements() const;         // N
  double energy() const;                 // E = -sum eps_s N_s

 private:
  std::vector<double> salaries_;
  std::vector<std::vector<double>> counts_;
  Capacity capacity_;
};

/// Stirling form of ln W: sum_s V_s ln V_s - sum_s sum_r v ln v, with 0 ln 0 = 0.
/// Requires V_s >= 1 for every class.
double census_entropy(const EnsembleCensus& census);

/// The entropy-maximizing census v[r][s] = V_s exp(lambda_s r) / Z_s with
/// lambda_s = beta eps_s + alpha.
EnsembleCensus gentile_census(std::span<const double> salaries, std::span<const double> volumes,
                              Capacity d, const GibbsParams& params);

}  // namespace hierstat
