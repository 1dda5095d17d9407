#include "config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>

namespace hierstat::cli {

nlohmann::json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file '" + path + "'");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError("config file '" + path + "' is not valid JSON: " + e.what());
  }
  if (!j.is_object()) throw ValidationError("config file '" + path + "' must hold a JSON object");
  return j;
}

nlohmann::json merge(nlohmann::json base, const nlohmann::json& overrides) {
  if (base.is_null()) base = nlohmann::json::object();
  for (const auto& [key, value] : overrides.items()) base[key] = value;
  return base;
}

std::optional<double> ConfigReader::number(const std::string& key) const {
  if (!has(key)) return std::nullopt;
  const auto& x = j_.at(key);
  if (!x.is_number() || !std::isfinite(x.get<double>())) {
    v_.check(false, "'" + key + "' must be a finite number");
    return std::nullopt;
  }
  return x.get<double>();
}

double ConfigReader::number(const std::string& key, double fallback) const {
  return number(key).value_or(fallback);
}

std::optional<std::int64_t> ConfigReader::integer(const std::string& key) const {
  if (!has(key)) return std::nullopt;
  const auto& x = j_.at(key);
  if (x.is_number_integer()) return x.get<std::int64_t>();
  // Accept 1e5-style whole numbers from hand-written configs.
  if (x.is_number_float()) {
    const double d = x.get<double>();
    if (std::isfinite(d) && d == std::trunc(d) && std::fabs(d) < 9e15) {
      return static_cast<std::int64_t>(d);
    }
  }
  v_.check(false, "'" + key + "' must be an integer");
  return std::nullopt;
}

std::int64_t ConfigReader::integer(const std::string& key, std::int64_t fallback) const {
  return integer(key).value_or(fallback);
}

std::vector<std::int64_t> ConfigReader::integers(const std::string& key) const {
  if (!has(key)) return {};
  const auto& x = j_.at(key);
  if (!x.is_array()) {
    const auto one = integer(key);
    return one ? std::vector<std::int64_t>{*one} : std::vector<std::int64_t>{};
  }
  std::vector<std::int64_t> out;
  for (const auto& e : x) {
    if (!e.is_number_integer()) {
      v_.check(false, "'" + key + "' must hold integers");
      return {};
    }
    out.push_back(e.get<std::int64_t>());
  }
  return out;
}

std::vector<double> ConfigReader::numbers(const std::string& key) const {
  if (!has(key)) return {};
  const auto& x = j_.at(key);
  if (!x.is_array()) {
    v_.check(false, "'" + key + "' must be an array of numbers");
    return {};
  }
  std::vector<double> out;
  for (const auto& e : x) {
    if (!e.is_number() || !std::isfinite(e.get<double>())) {
      v_.check(false, "'" + key + "' must hold finite numbers");
      return {};
    }
    out.push_back(e.get<double>());
  }
  return out;
}

bool ConfigReader::boolean(const std::string& key, bool fallback) const {
  if (!has(key)) return fallback;
  if (!j_.at(key).is_boolean()) {
    v_.check(false, "'" + key + "' must be true or false");
    return fallback;
  }
  return j_.at(key).get<bool>();
}

std::string ConfigReader::text(const std::string& key, const std::string& fallback) const {
  if (!has(key)) return fallback;
  if (!j_.at(key).is_string()) {
    v_.check(false, "'" + key + "' must be a string");
    return fallback;
  }
  return j_.at(key).get<std::string>();
}

void ConfigReader::require(const std::string& key) const {
  v_.check(has(key), "'" + key + "' is required");
}

std::uint64_t resolve_seed(const ConfigReader& cfg) {
  if (cfg.has("seed")) {
    const auto s = cfg.integer("seed");
    cfg.check(!s || *s >= 0, "'seed' must be >= 0");
    return s && *s >= 0 ? static_cast<std::uint64_t>(*s) : 0;
  }
  if (const char* env = std::getenv("HIERSTAT_SEED"); env && *env) {
    char* end = nullptr;
    const unsigned long long s = std::strtoull(env, &end, 10);
    cfg.check(*end == '\0' && env[0] != '-', "HIERSTAT_SEED must be a non-negative integer");
    return s;
  }
  return 42;
}

}  // namespace hierstat::cli
