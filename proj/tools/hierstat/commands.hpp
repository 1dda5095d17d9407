#pragma once

#include <ostream>

#include <json.hpp>

namespace hierstat::cli {

struct Io {
  std::ostream& out;
  std::ostream& err;
};

// Each command takes the merged config (file values overlaid by flags),
// validates all of it before doing any work, and throws on failure.
void cmd_gentile(const nlohmann::json& cfg, Io io);
void cmd_figures(const nlohmann::json& cfg, Io io);
void cmd_thermo(const nlohmann::json& cfg, Io io);
void cmd_eos(const nlohmann::json& cfg, Io io);
void cmd_simulate(const nlohmann::json& cfg, Io io);

}  // namespace hierstat::cli
