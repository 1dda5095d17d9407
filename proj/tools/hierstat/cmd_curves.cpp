// gentile and eos: tables of the single-level occupation and of the
// delta-distribution equation of state over an activity grid.

#include <sstream>

#include "commands.hpp"
#include "config.hpp"
#include "grid.hpp"
#include "hierstat/gentile.hpp"
#include "hierstat/thermostatics.hpp"
#include "output.hpp"

namespace hierstat::cli {

namespace {

constexpr Capacity kMaxPmfCapacity = 10000;

// stdout when no path is configured.
void emit(const ConfigReader& cfg, Io io, const std::string& text) {
  const auto path = cfg.text("output", "");
  if (path.empty()) {
    io.out << text;
  } else {
    write_file(path, text);
  }
}

EnergySign parse_sign(const std::string& s, const ConfigReader& cfg) {
  cfg.check(s == "salary" || s == "cost", "'sign' must be \"salary\" or \"cost\"");
  return s == "cost" ? EnergySign::Cost : EnergySign::Salary;
}

}  // namespace

void cmd_gentile(const nlohmann::json& j, Io io) {
  Violations v;
  const ConfigReader cfg(j, v);
  cfg.require("d");
  const auto capacities = cfg.integers("d");
  for (auto d : capacities) v.check(d >= 1, "'d' values must be >= 1");
  const bool relative = cfg.boolean("relative", false);
  const bool pmf = cfg.boolean("pmf", false);
  if (pmf) {
    for (auto d : capacities) {
      v.check(d <= kMaxPmfCapacity, "'pmf' output is limited to d <= 10000");
    }
  }

  // Either a lambda grid, or one point given by (alpha, beta, epsilon, sign).
  const bool point = cfg.has("alpha") || cfg.has("beta") || cfg.has("epsilon");
  std::vector<double> grid;
  std::optional<GibbsParams> params;
  double epsilon = 0.0;
  EnergySign sign = EnergySign::Salary;
  if (point) {
    for (const char* k : {"alpha", "beta", "epsilon"}) cfg.require(k);
    const auto alpha = cfg.number("alpha");
    const auto beta = cfg.number("beta");
    epsilon = cfg.number("epsilon", 0.0);
    v.check(epsilon >= 0.0, "'epsilon' must be >= 0");
    sign = parse_sign(cfg.text("sign", "salary"), cfg);
    if (alpha && beta) {
      v.check(*beta > 0.0, "'beta' must be > 0");
      if (*beta > 0.0) params = GibbsParams(*alpha, *beta);
    }
  } else {
    grid = lambda_grid(cfg, {-10.0, 10.0, 401});
  }
  v.throw_if_any();

  std::vector<std::string> header{"d", "lambda", relative ? "f_G_over_d" : "f_G"};
  if (pmf) header.emplace_back("pmf");
  std::ostringstream text;
  CsvWriter csv(text, header);
  for (auto d : capacities) {
    if (params) grid = {activity(OccupancyLevel(d, epsilon, sign), *params).value};
    for (double lambda : grid) {
      const Activity l(lambda);
      const double f = mean_occupancy(d, l);
      csv << d << lambda << (relative ? f / static_cast<double>(d) : f);
      if (pmf) {
        std::string cell;
        for (double p : occupancy_pmf(d, l).probabilities) {
          cell += (cell.empty() ? "" : ";") + format_number(p);
        }
        csv << cell;
      }
      csv.end_row();
    }
  }
  emit(cfg, io, text.str());
}

void cmd_eos(const nlohmann::json& j, Io io) {
  Violations v;
  const ConfigReader cfg(j, v);
  cfg.require("d");
  const auto d = cfg.integer("d", 1);
  v.check(d >= 1, "'d' must be >= 1");
  std::vector<double> grid;
  if (grid_given(cfg)) {
    grid = lambda_grid(cfg, {});
  } else if (d >= 1) {
    grid = scaled_grid(d);
  }
  v.throw_if_any();

  std::ostringstream text;
  CsvWriter csv(text, {"lambda", "n_over_d", "p_over_T", "mu_shifted_over_T", "x"});
  for (const auto& r : eos_sweep(d, grid)) {
    csv << r.lambda << r.n_over_d << r.p_over_T << r.mu_shifted_over_T << r.x;
    csv.end_row();
  }
  emit(cfg, io, text.str());
}

}  // namespace hierstat::cli
