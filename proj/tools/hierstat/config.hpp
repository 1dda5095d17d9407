#pragma once

// Reading a command's settings from the merged JSON config (file values
// overlaid by flags). Every accessor records type and range problems in a
// shared Violations list so a bad config is reported in one go.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "hierstat/errors.hpp"

namespace hierstat::cli {

/// File could not be read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

nlohmann::json load_config(const std::string& path);

/// Shallow merge: keys of `overrides` replace those of `base`.
nlohmann::json merge(nlohmann::json base, const nlohmann::json& overrides);

class ConfigReader {
 public:
  ConfigReader(const nlohmann::json& j, Violations& v) : j_(j), v_(v) {}

  bool has(const std::string& key) const { return j_.contains(key) && !j_.at(key).is_null(); }
  const nlohmann::json& raw(const std::string& key) const { return j_.at(key); }

  std::optional<double> number(const std::string& key) const;
  double number(const std::string& key, double fallback) const;
  std::optional<std::int64_t> integer(const std::string& key) const;
  std::int64_t integer(const std::string& key, std::int64_t fallback) const;
  /// A scalar or an array of integers.
  std::vector<std::int64_t> integers(const std::string& key) const;
  std::vector<double> numbers(const std::string& key) const;
  bool boolean(const std::string& key, bool fallback) const;
  std::string text(const std::string& key, const std::string& fallback) const;

  void require(const std::string& key) const;
  void check(bool ok, const std::string& message) const { v_.check(ok, message); }

 private:
  const nlohmann::json& j_;
  Violations& v_;
};

/// Seed precedence: explicit config or flag value, then HIERSTAT_SEED, then 42.
std::uint64_t resolve_seed(const ConfigReader& cfg);

}  // namespace hierstat::cli
