#pragma once

#include <json.hpp>

#include "hierstat/distribution.hpp"

namespace hierstat {

/// Parse {"type": "delta" | "two_point" | "uniform" | "histogram", ...}.
///   delta:     epsilon0
///   two_point: epsilon1, epsilon2, weight (mass at epsilon1)
///   uniform:   a, b
///   histogram: edges[], masses[]
/// Throws ValidationError listing every missing or invalid field.
SalaryDistribution distribution_from_json(const nlohmann::json& j);

nlohmann::json distribution_to_json(const SalaryDistribution& dist);

}  // namespace hierstat
