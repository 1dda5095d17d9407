#pragma once

// Stochastic and exact reference models of hierarchical occupancy: a
// grand-canonical sampler for one level, a canonical multi-level hierarchy
// with a fixed number of agents (exact by dynamic programming and sampled
// by Metropolis dynamics), and the pumped "social laser" relaxation.

#include <cstdint>
#include <string>
#include <vector>

#include "hierstat/gentile.hpp"

namespace hierstat {

struct LevelSpec {
  Capacity capacity;
  double salary;
};

/// Levels ordered from the top (fewest positions, highest salary) down.
/// Requires d_i < d_{i+1} and eps_i > eps_{i+1}.
class HierarchySpec {
 public:
  explicit HierarchySpec(std::vector<LevelSpec> levels);

  const std::vector<LevelSpec>& levels() const noexcept { return levels_; }
  std::size_t size() const noexcept { return levels_.size(); }
  Capacity total_capacity() const noexcept;

 private:
  std::vector<LevelSpec> levels_;
};

/// Occupancy vector r_i with 0 <= r_i <= d_i. The energy E = -sum eps_i r_i
/// is always recomputed from the occupancy, never updated incrementally.
class Configuration {
 public:
  Configuration(const HierarchySpec& spec, std::vector<Capacity> occupancy);

  /// Fill levels in order 1, 2, ... until `agents` are placed.
  static Configuration ground_state(const HierarchySpec& spec, Capacity agents);

  const std::vector<Capacity>& occupancy() const noexcept { return occupancy_; }
  Capacity total_agents() const noexcept;
  double energy() const noexcept { return energy_; }

  /// Move one agent from level `from` to level `to`.
  void move(std::size_t from, std::size_t to);

 private:
  void recompute_energy();

  std::vector<LevelSpec> levels_;
  std::vector<Capacity> occupancy_;
  double energy_ = 0.0;
};

/// How the positions of a level are counted.
///  Distinct:   positions are individually addressable; a level holding r of
///              its d positions has C(d, r) microstates. This is the law
///              sampled by moving a random agent to a random vacant position.
///  Indistinct: a level is described by r alone (one state per r), the
///              counting behind the Gentile occupation.
enum class PositionModel { Distinct, Indistinct };

struct CanonicalExpectation {
  std::vector<double> mean_occupancy;
  std::vector<std::vector<double>> marginals;  // P(r_i = r), r = 0..d_i
  double mean_energy = 0.0;
};

/// Exact expectations under P(r) ~ w(r) exp(beta sum eps_i r_i) restricted to
/// sum r_i = agents, by level-by-level convolution in log space.
CanonicalExpectation exact_canonical(const HierarchySpec& spec, Capacity agents, double beta,
                                     PositionModel model = PositionModel::Distinct);

struct TrajectoryPoint {
  std::int64_t step;
  std::vector<Capacity> occupancy;
  double energy;
  std::string event;  // empty, or "pump" / "release" in the laser scenario
};

struct SimulationOptions {
  std::int64_t steps = 100000;
  std::uint64_t seed = 42;
  double burn_in = 0.1;           // fraction of steps discarded from the estimates
  std::int64_t thinning = 1;      // use every k-th post-burn-in step in the estimates
  std::int64_t record_every = 1;  // trajectory sampling stride; 0 disables recording
  int batches = 50;               // batch-means standard errors
  PositionModel model = PositionModel::Distinct;
};

struct SimulationResult {
  std::vector<TrajectoryPoint> trajectory;
  std::vector<double> mean_occupancy;
  std::vector<double> standard_error;
  double mean_energy = 0.0;
  double energy_standard_error = 0.0;
  std::int64_t accepted = 0;
  std::int64_t steps = 0;
  std::uint64_t seed = 0;
};

/// Metropolis dynamics at fixed agent count: propose moving one agent and
/// accept with min(1, exp(-beta dE)). Moves to higher salary (spontaneous)
/// are always accepted; moves to lower salary (forced) with Boltzmann
/// probability. Starts from the ground state.
SimulationResult simulate_canonical(const HierarchySpec& spec, Capacity agents, double beta,
                                    const SimulationOptions& options);

struct GrandCanonicalSample {
  std::vector<double> pmf;  // empirical P(r), r = 0..d
  double mean = 0.0;
  double standard_error = 0.0;  // batch means
  std::int64_t steps = 0;
  std::uint64_t seed = 0;
};

/// Metropolis chain on r in {0..d}: propose r +/- 1 with equal probability,
/// reject proposals leaving the range, accept with min(1, exp(lambda dr)).
/// The first `burn_in` fraction of steps is discarded. Requires steps >= 1e4.
GrandCanonicalSample sample_grand_canonical(const OccupancyLevel& level, const GibbsParams& params,
                                            std::int64_t steps, std::uint64_t seed,
                                            double burn_in = 0.1);

struct LaserResult {
  std::vector<TrajectoryPoint> trajectory;  // full run including pump and release markers
  std::int64_t pump_step = 0;
  Capacity pumped_agents = 0;
  std::vector<double> pre_pump_mean_occupancy;  // second half of the equilibration phase
  std::vector<double> relaxed_mean_occupancy;   // final quarter of the run
  std::vector<double> relaxed_standard_error;
};

/// Equilibrate for steps/2, then move round(pump_fraction * agents) agents
/// from the highest-salary occupied levels to the lowest-salary vacancies
/// (population inversion), then release and relax for the remaining steps.
LaserResult social_laser_scenario(const HierarchySpec& spec, Capacity agents, double beta,
                                  double pump_fraction, const SimulationOptions& options);

}  // namespace hierstat
