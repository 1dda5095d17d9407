#include "hierstat/census.hpp"

#include <cmath>
#include <string>

#include "detail/summation.hpp"
#include "hierstat/errors.hpp"

namespace hierstat {

EnsembleCensus::EnsembleCensus(std::vector<double> salaries, std::vector<std::vector<double>> counts)
    : salaries_(std::move(salaries)), counts_(std::move(counts)), capacity_(0) {
  Violations v;
  v.check(!salaries_.empty(), "census needs at least one salary class");
  v.check(salaries_.size() == counts_.size(), "one count row per salary class required");
  if (!counts_.empty()) {
    capacity_ = static_cast<Capacity>(counts_.front().size()) - 1;
    v.check(capacity_ >= 1, "count rows must cover r = 0..d with d >= 1");
  }
  for (std::size_t s = 0; s < counts_.size(); ++s) {
    v.check(static_cast<Capacity>(counts_[s].size()) == capacity_ + 1,
            "class " + std::to_string(s) + ": row length differs from class 0");
    bool ok = true;
    for (double c : counts_[s]) ok = ok && std::isfinite(c) && c >= 0.0;
    v.check(ok, "class " + std::to_string(s) + ": counts must be finite and >= 0");
  }
  for (double e : salaries_) v.check(std::isfinite(e) && e >= 0.0, "salaries must be >= 0");
  v.throw_if_any();
}

double EnsembleCensus::volume(std::size_t s) const {
  detail::CompensatedSum sum;
  for (double c : counts_.at(s)) sum.add(c);
  return sum.value();
}

double EnsembleCensus::elements(std::size_t s) const {
  detail::CompensatedSum sum;
  const auto& row = counts_.at(s);
  for (std::size_t r = 0; r < row.size(); ++r) sum.add(static_cast<double>(r) * row[r]);
  return sum.value();
}

double EnsembleCensus::total_volume() const {
  detail::CompensatedSum sum;
  for (std::size_t s = 0; s < classes(); ++s) sum.add(volume(s));
  return sum.value();
}

double EnsembleCensus::total_elements() const {
  detail::CompensatedSum sum;
  for (std::size_t s = 0; s < classes(); ++s) sum.add(elements(s));
  return sum.value();
}

double EnsembleCensus::energy() const {
  detail::CompensatedSum sum;
  for (std::size_t s = 0; s < classes(); ++s) sum.add(-salaries_[s] * elements(s));
  return sum.value();
}

double census_entropy(const EnsembleCensus& census) {
  detail::CompensatedSum s;
  for (std::size_t k = 0; k < census.classes(); ++k) {
    const double vs = census.volume(k);
    if (!(vs >= 1.0)) {
      throw ValidationError("census class " + std::to_string(k) + " has V_s < 1");
    }
    s.add(vs * std::log(vs));
    for (double c : census.counts()[k]) {
      if (c > 0.0) s.add(-c * std::log(c));
    }
  }
  return s.value();
}

EnsembleCensus gentile_census(std::span<const double> salaries, std::span<const double> volumes,
                              Capacity d, const GibbsParams& params) {
  if (salaries.size() != volumes.size()) {
    throw ValidationError("one volume per salary class required");
  }
  std::vector<std::vector<double>> counts;
  for (std::size_t s = 0; s < salaries.size(); ++s) {
    const auto pmf = occupancy_pmf(d, Activity(params.beta() * salaries[s] + params.alpha()));
    auto& row = counts.emplace_back(pmf.probabilities);
    for (double& c : row) c *= volumes[s];
  }
  return EnsembleCensus({salaries.begin(), salaries.end()}, std::move(counts));
}

}  // namespace hierstat
