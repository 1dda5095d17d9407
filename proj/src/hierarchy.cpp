#include "hierstat/hierarchy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "hierstat/errors.hpp"
#include "hierstat/random.hpp"

namespace hierstat {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_sum_exp(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double m = std::max(a, b);
  return m + std::log1p(std::exp(-std::fabs(a - b)));
}

double log_choose(Capacity n, Capacity k) {
  return std::lgamma(static_cast<double>(n) + 1.0) - std::lgamma(static_cast<double>(k) + 1.0) -
         std::lgamma(static_cast<double>(n - k) + 1.0);
}

// Log-weights over the total count m for a group of levels.
std::vector<double> convolve(const std::vector<double>& acc, const std::vector<double>& level,
                             std::size_t cap) {
  const std::size_t size = std::min(acc.size() + level.size() - 1, cap + 1);
  std::vector<double> out(size, kNegInf);
  for (std::size_t a = 0; a < acc.size(); ++a) {
    if (acc[a] == kNegInf) continue;
    for (std::size_t r = 0; r < level.size() && a + r < size; ++r) {
      out[a + r] = log_sum_exp(out[a + r], acc[a] + level[r]);
    }
  }
  return out;
}

// Streaming mean with batch-means standard error.
class BatchMeans {
 public:
  BatchMeans(std::int64_t expected_samples, int batches)
      : batch_size_(std::max<std::int64_t>(1, expected_samples / std::max(batches, 2))) {}

  void add(double x) {
    total_ += x;
    ++count_;
    current_ += x;
    if (++in_batch_ == batch_size_) {
      batch_means_.push_back(current_ / static_cast<double>(batch_size_));
      current_ = 0.0;
      in_batch_ = 0;
    }
  }

  double mean() const { return count_ ? total_ / static_cast<double>(count_) : 0.0; }

  double standard_error() const {
    const auto b = static_cast<double>(batch_means_.size());
    if (batch_means_.size() < 2) return std::numeric_limits<double>::quiet_NaN();
    const double m = std::accumulate(batch_means_.begin(), batch_means_.end(), 0.0) / b;
    double ss = 0.0;
    for (double x : batch_means_) ss += (x - m) * (x - m);
    return std::sqrt(ss / (b * (b - 1.0)));
  }

 private:
  std::int64_t batch_size_;
  std::int64_t count_ = 0;
  std::int64_t in_batch_ = 0;
  double total_ = 0.0;
  double current_ = 0.0;
  std::vector<double> batch_means_;
};

void validate_canonical(const HierarchySpec& spec, Capacity agents, double beta) {
  Violations v;
  v.check(agents >= 0 && agents <= spec.total_capacity(),
          "agent count must lie in [0, total capacity " + std::to_string(spec.total_capacity()) +
              "]");
  v.check(std::isfinite(beta) && beta >= 0.0, "beta must be finite and >= 0");
  v.throw_if_any();
}

void validate_options(const SimulationOptions& o) {
  Violations v;
  v.check(o.steps >= 1, "steps must be >= 1");
  v.check(o.burn_in >= 0.0 && o.burn_in < 1.0, "burn_in must lie in [0, 1)");
  v.check(o.thinning >= 1, "thinning must be >= 1");
  v.check(o.record_every >= 0, "record_every must be >= 0");
  v.check(o.batches >= 2, "batches must be >= 2");
  v.throw_if_any();
}

// Metropolis chain over occupancy vectors at fixed agent count.
class CanonicalChain {
 public:
  CanonicalChain(const HierarchySpec& spec, Configuration start, double beta, PositionModel model)
      : spec_(spec), config_(std::move(start)), beta_(beta), model_(model) {}

  const Configuration& config() const { return config_; }
  Configuration& config() { return config_; }

  // One proposal; returns true when accepted.
  bool step(Rng& rng) {
    const auto& levels = spec_.levels();
    const auto& occ = config_.occupancy();
    std::size_t from = 0;
    std::size_t to = 0;
    if (model_ == PositionModel::Distinct) {
      const Capacity agents = config_.total_agents();
      const Capacity vacancies = spec_.total_capacity() - agents;
      if (agents == 0 || vacancies == 0) return false;
      auto pick = rng.below(static_cast<std::uint64_t>(agents));
      while (pick >= static_cast<std::uint64_t>(occ[from])) pick -= occ[from++];
      pick = rng.below(static_cast<std::uint64_t>(vacancies));
      while (pick >= static_cast<std::uint64_t>(levels[to].capacity - occ[to])) {
        pick -= levels[to].capacity - occ[to];
        ++to;
      }
      if (from == to) return true;  // swap within a level: same occupancy
    } else {
      const std::size_t l = levels.size();
      if (l < 2) return false;
      from = rng.below(l);
      to = rng.below(l - 1);
      if (to >= from) ++to;
      if (occ[from] == 0 || occ[to] == levels[to].capacity) return false;
    }
    // E = -sum eps r, so moving one agent from -> to changes E by eps_from - eps_to.
    const double delta_e = levels[from].salary - levels[to].salary;
    if (delta_e > 0.0 && !(rng.uniform() < std::exp(-beta_ * delta_e))) return false;
    config_.move(from, to);
    return true;
  }

 private:
  const HierarchySpec& spec_;
  Configuration config_;
  double beta_;
  PositionModel model_;
};

struct Estimator {
  Estimator(std::size_t levels, std::int64_t samples, int batches)
      : energy(samples, batches) {
    occupancy.reserve(levels);
    for (std::size_t i = 0; i < levels; ++i) occupancy.emplace_back(samples, batches);
  }
  void add(const Configuration& c) {
    for (std::size_t i = 0; i < occupancy.size(); ++i) {
      occupancy[i].add(static_cast<double>(c.occupancy()[i]));
    }
    energy.add(c.energy());
  }
  std::vector<BatchMeans> occupancy;
  BatchMeans energy;
};

TrajectoryPoint snapshot(std::int64_t step, const Configuration& c, std::string event = {}) {
  return {step, c.occupancy(), c.energy(), std::move(event)};
}

}  // namespace

HierarchySpec::HierarchySpec(std::vector<LevelSpec> levels) : levels_(std::move(levels)) {
  Violations v;
  v.check(!levels_.empty(), "hierarchy needs at least one level");
  for (std::size_t i = 0; i < levels_.size(); ++i) {
    const auto& l = levels_[i];
    const auto idx = std::to_string(i + 1);
    v.check(l.capacity >= 1, "level " + idx + ": capacity must be >= 1");
    v.check(std::isfinite(l.salary) && l.salary >= 0.0,
            "level " + idx + ": salary must be finite and >= 0");
    if (i + 1 < levels_.size()) {
      const auto next = std::to_string(i + 2);
      v.check(l.capacity < levels_[i + 1].capacity,
              "hierarchy condition d_i < d_{i+1} violated between levels " + idx + " and " + next);
      v.check(l.salary > levels_[i + 1].salary,
              "hierarchy condition eps_i > eps_{i+1} violated between levels " + idx + " and " +
                  next);
    }
  }
  v.throw_if_any();
}

Capacity HierarchySpec::total_capacity() const noexcept {
  Capacity total = 0;
  for (const auto& l : levels_) total += l.capacity;
  return total;
}

Configuration::Configuration(const HierarchySpec& spec, std::vector<Capacity> occupancy)
    : levels_(spec.levels()), occupancy_(std::move(occupancy)) {
  Violations v;
  v.check(occupancy_.size() == levels_.size(), "occupancy vector length must match level count");
  for (std::size_t i = 0; i < std::min(occupancy_.size(), levels_.size()); ++i) {
    v.check(occupancy_[i] >= 0 && occupancy_[i] <= levels_[i].capacity,
            "level " + std::to_string(i + 1) + ": occupancy must lie in [0, d_i]");
  }
  v.throw_if_any();
  recompute_energy();
}

Configuration Configuration::ground_state(const HierarchySpec& spec, Capacity agents) {
  if (agents < 0 || agents > spec.total_capacity()) {
    throw ValidationError("agent count exceeds total capacity");
  }
  std::vector<Capacity> occ;
  for (const auto& l : spec.levels()) {
    const Capacity r = std::min(agents, l.capacity);
    occ.push_back(r);
    agents -= r;
  }
  return Configuration(spec, std::move(occ));
}

Capacity Configuration::total_agents() const noexcept {
  return std::accumulate(occupancy_.begin(), occupancy_.end(), Capacity{0});
}

void Configuration::move(std::size_t from, std::size_t to) {
  if (from >= occupancy_.size() || to >= occupancy_.size() || occupancy_[from] == 0 ||
      occupancy_[to] == levels_[to].capacity) {
    throw ValidationError("invalid move between levels");
  }
  --occupancy_[from];
  ++occupancy_[to];
  recompute_energy();
}

void Configuration::recompute_energy() {
  double e = 0.0;
  for (std::size_t i = 0; i < occupancy_.size(); ++i) {
    e -= levels_[i].salary * static_cast<double>(occupancy_[i]);
  }
  energy_ = e;
}

CanonicalExpectation exact_canonical(const HierarchySpec& spec, Capacity agents, double beta,
                                     PositionModel model) {
  validate_canonical(spec, agents, beta);
  const auto& levels = spec.levels();
  const std::size_t l = levels.size();
  const auto cap = static_cast<std::size_t>(agents);

  std::vector<std::vector<double>> weights(l);
  for (std::size_t i = 0; i < l; ++i) {
    const Capacity d = levels[i].capacity;
    weights[i].resize(static_cast<std::size_t>(d) + 1);
    for (Capacity r = 0; r <= d; ++r) {
      const double degeneracy = model == PositionModel::Distinct ? log_choose(d, r) : 0.0;
      weights[i][static_cast<std::size_t>(r)] =
          degeneracy + beta * levels[i].salary * static_cast<double>(r);
    }
  }

  // prefix[i]: levels [0, i); suffix[i]: levels [i, l).
  std::vector<std::vector<double>> prefix(l + 1), suffix(l + 1);
  prefix[0] = {0.0};
  for (std::size_t i = 0; i < l; ++i) prefix[i + 1] = convolve(prefix[i], weights[i], cap);
  suffix[l] = {0.0};
  for (std::size_t i = l; i-- > 0;) suffix[i] = convolve(suffix[i + 1], weights[i], cap);

  CanonicalExpectation out;
  out.mean_occupancy.resize(l);
  out.marginals.resize(l);
  for (std::size_t i = 0; i < l; ++i) {
    const auto& left = prefix[i];
    const auto& right = suffix[i + 1];
    // Log-weight of the other levels jointly holding m agents.
    const auto others = [&](std::size_t m) {
      double acc = kNegInf;
      for (std::size_t a = 0; a <= m && a < left.size(); ++a) {
        if (m - a < right.size()) acc = log_sum_exp(acc, left[a] + right[m - a]);
      }
      return acc;
    };
    std::vector<double> logp(weights[i].size(), kNegInf);
    double peak = kNegInf;
    for (std::size_t r = 0; r < logp.size() && r <= cap; ++r) {
      logp[r] = weights[i][r] + others(cap - r);
      peak = std::max(peak, logp[r]);
    }
    std::vector<double> p(logp.size(), 0.0);
    double z = 0.0;
    for (std::size_t r = 0; r < p.size(); ++r) {
      p[r] = logp[r] == kNegInf ? 0.0 : std::exp(logp[r] - peak);
      z += p[r];
    }
    double mean = 0.0;
    for (std::size_t r = 0; r < p.size(); ++r) {
      p[r] /= z;
      mean += static_cast<double>(r) * p[r];
    }
    out.marginals[i] = std::move(p);
    out.mean_occupancy[i] = mean;
    out.mean_energy -= levels[i].salary * mean;
  }
  return out;
}

SimulationResult simulate_canonical(const HierarchySpec& spec, Capacity agents, double beta,
                                    const SimulationOptions& options) {
  validate_canonical(spec, agents, beta);
  validate_options(options);

  Rng rng(options.seed);
  CanonicalChain chain(spec, Configuration::ground_state(spec, agents), beta, options.model);
  const auto burn = static_cast<std::int64_t>(options.burn_in * static_cast<double>(options.steps));
  Estimator est(spec.size(), (options.steps - burn) / options.thinning, options.batches);

  SimulationResult res;
  res.steps = options.steps;
  res.seed = options.seed;
  if (options.record_every > 0) res.trajectory.push_back(snapshot(0, chain.config()));
  for (std::int64_t s = 1; s <= options.steps; ++s) {
    if (chain.step(rng)) ++res.accepted;
    if (s > burn && (s - burn) % options.thinning == 0) est.add(chain.config());
    if (options.record_every > 0 && s % options.record_every == 0) {
      res.trajectory.push_back(snapshot(s, chain.config()));
    }
  }
  for (const auto& b : est.occupancy) {
    res.mean_occupancy.push_back(b.mean());
    res.standard_error.push_back(b.standard_error());
  }
  res.mean_energy = est.energy.mean();
  res.energy_standard_error = est.energy.standard_error();
  return res;
}

GrandCanonicalSample sample_grand_canonical(const OccupancyLevel& level, const GibbsParams& params,
                                            std::int64_t steps, std::uint64_t seed,
                                            double burn_in) {
  Violations v;
  v.check(steps >= 10000, "steps must be >= 10^4");
  v.check(burn_in >= 0.0 && burn_in < 1.0, "burn_in must lie in [0, 1)");
  v.throw_if_any();

  const double lambda = activity(level, params).value;
  const Capacity d = level.capacity();
  const double up = std::exp(lambda);     // acceptance ratio for r -> r+1
  const double down = std::exp(-lambda);  // and for r -> r-1
  Rng rng(seed);
  const auto burn = static_cast<std::int64_t>(burn_in * static_cast<double>(steps));
  BatchMeans mean(steps - burn, 50);
  std::vector<std::int64_t> counts(static_cast<std::size_t>(d) + 1, 0);

  Capacity r = 0;
  for (std::int64_t s = 1; s <= steps; ++s) {
    const bool go_up = rng.below(2) == 1;
    const Capacity next = go_up ? r + 1 : r - 1;
    if (next >= 0 && next <= d) {
      const double ratio = go_up ? up : down;
      if (ratio >= 1.0 || rng.uniform() < ratio) r = next;
    }
    if (s > burn) {
      ++counts[static_cast<std::size_t>(r)];
      mean.add(static_cast<double>(r));
    }
  }

  GrandCanonicalSample out;
  out.steps = steps;
  out.seed = seed;
  const auto kept = static_cast<double>(steps - burn);
  for (auto c : counts) out.pmf.push_back(static_cast<double>(c) / kept);
  out.mean = mean.mean();
  out.standard_error = mean.standard_error();
  return out;
}

LaserResult social_laser_scenario(const HierarchySpec& spec, Capacity agents, double beta,
                                  double pump_fraction, const SimulationOptions& options) {
  validate_canonical(spec, agents, beta);
  validate_options(options);
  if (!(pump_fraction >= 0.0 && pump_fraction <= 1.0)) {
    throw ValidationError("pump_fraction must lie in [0, 1]");
  }

  Rng rng(options.seed);
  CanonicalChain chain(spec, Configuration::ground_state(spec, agents), beta, options.model);
  const std::int64_t total = options.steps;
  const std::int64_t pump_at = total / 2;
  const std::int64_t settle_from = total * 3 / 4;

  LaserResult res;
  res.pump_step = pump_at;
  Estimator before(spec.size(), pump_at - pump_at / 2, options.batches);
  Estimator after(spec.size(), total - settle_from, options.batches);
  const auto record = [&](std::int64_t s, std::string event = {}) {
    if (options.record_every > 0 && (s % options.record_every == 0 || !event.empty())) {
      res.trajectory.push_back(snapshot(s, chain.config(), std::move(event)));
    }
  };

  record(0);
  for (std::int64_t s = 1; s <= pump_at; ++s) {
    chain.step(rng);
    if (s > pump_at / 2) before.add(chain.config());
    record(s);
  }

  // Population inversion: top (high-salary) agents forced to bottom vacancies.
  const auto& levels = spec.levels();
  const auto target = static_cast<Capacity>(std::llround(pump_fraction * static_cast<double>(agents)));
  auto& config = chain.config();
  while (res.pumped_agents < target) {
    const auto& occ = config.occupancy();
    std::size_t src = 0;
    while (src < occ.size() && occ[src] == 0) ++src;
    std::size_t dst = occ.size();
    while (dst-- > 0 && occ[dst] == levels[dst].capacity) {
    }
    if (src >= occ.size() || dst >= occ.size() || dst <= src) break;
    config.move(src, dst);
    ++res.pumped_agents;
  }
  if (options.record_every > 0) {
    res.trajectory.push_back(snapshot(pump_at, chain.config(), "pump"));
  }

  for (std::int64_t s = pump_at + 1; s <= total; ++s) {
    chain.step(rng);
    if (s > settle_from) after.add(chain.config());
    record(s, s == pump_at + 1 ? "release" : "");
  }

  for (const auto& b : before.occupancy) res.pre_pump_mean_occupancy.push_back(b.mean());
  for (const auto& b : after.occupancy) {
    res.relaxed_mean_occupancy.push_back(b.mean());
    res.relaxed_standard_error.push_back(b.standard_error());
  }
  return res;
}

}  // namespace hierstat
