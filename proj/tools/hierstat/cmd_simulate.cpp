// simulate: canonical Metropolis runs of a hierarchy, optionally with the
// pump-and-release scenario, and an exact comparison on request.

#include <cmath>
#include <optional>
#include <sstream>

#include "commands.hpp"
#include "config.hpp"
#include "hierstat/hierarchy.hpp"
#include "output.hpp"

namespace hierstat::cli {

namespace {

constexpr Capacity kOracleCapacityLimit = 10000;

std::optional<HierarchySpec> read_levels(const ConfigReader& cfg, Violations& v) {
  cfg.require("levels");
  if (!cfg.has("levels")) return std::nullopt;
  const auto& raw = cfg.raw("levels");
  if (!raw.is_array() || raw.empty()) {
    v.check(false, "'levels' must be a non-empty array of {capacity, salary}");
    return std::nullopt;
  }
  std::vector<LevelSpec> levels;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const auto& l = raw[i];
    const auto where = "levels[" + std::to_string(i) + "]";
    if (!l.is_object() || !l.contains("capacity") || !l.at("capacity").is_number_integer() ||
        !l.contains("salary") || !l.at("salary").is_number()) {
      v.check(false, where + " needs integer 'capacity' and numeric 'salary'");
      return std::nullopt;
    }
    levels.push_back({l.at("capacity").get<Capacity>(), l.at("salary").get<double>()});
  }
  try {
    return HierarchySpec(std::move(levels));
  } catch (const ValidationError& e) {
    v.absorb(e);
    return std::nullopt;
  }
}

std::string trajectory_csv(const std::vector<TrajectoryPoint>& points, std::size_t levels,
                           bool events) {
  std::vector<std::string> header{"step"};
  for (std::size_t i = 1; i <= levels; ++i) header.push_back("r" + std::to_string(i));
  header.emplace_back("energy");
  if (events) header.emplace_back("event");
  std::ostringstream text;
  CsvWriter csv(text, header);
  for (const auto& p : points) {
    csv << p.step;
    for (auto r : p.occupancy) csv << r;
    csv << p.energy;
    if (events) csv << p.event;
    csv.end_row();
  }
  return text.str();
}

// z = (estimate - exact) / standard error, per level.
nlohmann::ordered_json oracle_block(const CanonicalExpectation& exact,
                                    const std::vector<double>& estimate,
                                    const std::vector<double>& standard_error) {
  std::vector<double> z;
  bool within = true;
  for (std::size_t i = 0; i < estimate.size(); ++i) {
    const double gap = estimate[i] - exact.mean_occupancy[i];
    const double zi = standard_error[i] > 0.0 ? gap / standard_error[i] : (gap == 0.0 ? 0.0 : INFINITY);
    within = within && std::fabs(zi) <= 3.0;
    z.push_back(std::isfinite(zi) ? zi : 1e308);
  }
  nlohmann::ordered_json j;
  j["mean_occupancy"] = exact.mean_occupancy;
  j["mean_energy"] = exact.mean_energy;
  j["z_scores"] = z;
  j["within_3_sigma"] = within;
  return j;
}

}  // namespace

void cmd_simulate(const nlohmann::json& j, Io io) {
  Violations v;
  const ConfigReader cfg(j, v);
  const auto spec = read_levels(cfg, v);
  cfg.require("agents");
  cfg.require("beta");
  const auto agents = cfg.integer("agents", 0);
  const double beta = cfg.number("beta", 0.0);
  v.check(beta >= 0.0, "'beta' must be >= 0");
  if (spec) {
    v.check(agents >= 0 && agents <= spec->total_capacity(),
            "'agents' must lie in [0, total capacity]");
  }
  SimulationOptions opt;
  opt.steps = cfg.integer("steps", opt.steps);
  opt.seed = resolve_seed(cfg);
  opt.burn_in = cfg.number("burn_in", opt.burn_in);
  opt.thinning = cfg.integer("thinning", opt.thinning);
  opt.record_every = cfg.integer("record_every", opt.record_every);
  opt.batches = static_cast<int>(cfg.integer("batches", opt.batches));
  v.check(opt.steps >= 1, "'steps' must be >= 1");
  v.check(opt.burn_in >= 0.0 && opt.burn_in < 1.0, "'burn_in' must lie in [0, 1)");
  v.check(opt.thinning >= 1, "'thinning' must be >= 1");
  v.check(opt.record_every >= 0, "'record_every' must be >= 0");
  v.check(opt.batches >= 2, "'batches' must be >= 2");
  const auto model = cfg.text("position_model", "distinct");
  v.check(model == "distinct" || model == "indistinct",
          "'position_model' must be distinct or indistinct");
  opt.model = model == "indistinct" ? PositionModel::Indistinct : PositionModel::Distinct;
  const auto pump = cfg.number("pump_fraction");
  v.check(!pump || (*pump >= 0.0 && *pump <= 1.0), "'pump_fraction' must lie in [0, 1]");
  const bool oracle = cfg.boolean("oracle", false);
  const auto trajectory_path = cfg.text("trajectory", "");
  const auto summary_path = cfg.text("summary", "");
  v.throw_if_any();

  nlohmann::ordered_json summary;
  summary["seed"] = opt.seed;
  summary["steps"] = opt.steps;
  summary["agents"] = agents;
  summary["beta"] = beta;
  summary["position_model"] = model;

  std::vector<double> estimate, standard_error;
  std::string trajectory;
  if (pump) {
    const auto res = social_laser_scenario(*spec, agents, beta, *pump, opt);
    summary["pump_fraction"] = *pump;
    summary["pump_step"] = res.pump_step;
    summary["pumped_agents"] = res.pumped_agents;
    summary["pre_pump_mean_occupancy"] = res.pre_pump_mean_occupancy;
    summary["relaxed_mean_occupancy"] = res.relaxed_mean_occupancy;
    summary["relaxed_standard_error"] = res.relaxed_standard_error;
    estimate = res.relaxed_mean_occupancy;
    standard_error = res.relaxed_standard_error;
    trajectory = trajectory_csv(res.trajectory, spec->size(), true);
  } else {
    const auto res = simulate_canonical(*spec, agents, beta, opt);
    summary["accepted"] = res.accepted;
    summary["mean_occupancy"] = res.mean_occupancy;
    summary["standard_error"] = res.standard_error;
    summary["mean_energy"] = res.mean_energy;
    summary["energy_standard_error"] = res.energy_standard_error;
    estimate = res.mean_occupancy;
    standard_error = res.standard_error;
    trajectory = trajectory_csv(res.trajectory, spec->size(), false);
  }
  if (oracle) {
    if (spec->total_capacity() <= kOracleCapacityLimit) {
      summary["oracle"] =
          oracle_block(exact_canonical(*spec, agents, beta, opt.model), estimate, standard_error);
    } else {
      summary["oracle"] = nullptr;
      io.err << "oracle skipped: total capacity exceeds 10000\n";
    }
  }

  if (!trajectory_path.empty()) write_file(trajectory_path, trajectory);
  const auto text = summary.dump(2) + "\n";
  if (summary_path.empty()) {
    io.out << text;
  } else {
    write_file(summary_path, text);
  }
}

}  // namespace hierstat::cli
