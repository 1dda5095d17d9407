#pragma once

#include <vector>

#include "config.hpp"
#include "hierstat/gentile.hpp"

namespace hierstat::cli {

struct GridDefaults {
  double lo = 0.0;
  double hi = 0.0;
  std::int64_t points = 0;  // 0: the grid must be given explicitly
};

bool grid_given(const ConfigReader& cfg);

/// From "lambdas" (explicit list) or "lambda_min", "lambda_max", "points"
/// (evenly spaced, endpoints included). An empty grid is a violation.
std::vector<double> lambda_grid(const ConfigReader& cfg, const GridDefaults& defaults);

/// lambda = t/(d+1) for t = -40, -39.8, ..., 40: the default equation-of-
/// state grid. The lambda(d+1) scale makes every d span the same range of
/// fill fractions, and t = 0 lands exactly on lambda = 0.
std::vector<double> scaled_grid(Capacity d);

}  // namespace hierstat::cli
