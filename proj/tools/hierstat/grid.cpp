#include "grid.hpp"

namespace hierstat::cli {

bool grid_given(const ConfigReader& cfg) {
  return cfg.has("lambdas") || cfg.has("lambda_min") || cfg.has("lambda_max") ||
         cfg.has("points");
}

std::vector<double> lambda_grid(const ConfigReader& cfg, const GridDefaults& defaults) {
  if (cfg.has("lambdas")) {
    const auto& raw = cfg.raw("lambdas");
    cfg.check(!(raw.is_array() && raw.empty()), "lambda grid is empty");
    return cfg.numbers("lambdas");
  }
  const bool has_defaults = defaults.points > 0;
  if (!has_defaults) {
    for (const char* k : {"lambda_min", "lambda_max", "points"}) cfg.require(k);
  }
  const double lo = cfg.number("lambda_min", defaults.lo);
  const double hi = cfg.number("lambda_max", defaults.hi);
  const auto n = cfg.integer("points", defaults.points);
  cfg.check(n >= 1, "lambda grid is empty: 'points' must be >= 1");
  cfg.check(n <= 10'000'000, "'points' must be <= 10^7");
  cfg.check(lo <= hi, "'lambda_min' must not exceed 'lambda_max'");
  cfg.check(n != 1 || lo == hi, "a one-point grid needs lambda_min == lambda_max");
  if (n < 1 || n > 10'000'000 || lo > hi) return {};
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(n));
  for (std::int64_t k = 0; k < n; ++k) {
    grid.push_back(n == 1 ? lo : lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n - 1));
  }
  return grid;
}

std::vector<double> scaled_grid(Capacity d) {
  std::vector<double> grid;
  const double scale = static_cast<double>(d) + 1.0;
  for (int k = -200; k <= 200; ++k) grid.push_back(0.2 * k / scale);
  return grid;
}

}  // namespace hierstat::cli
