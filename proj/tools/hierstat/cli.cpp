#include "cli.hpp"

#include <CLI11.hpp>
#include <charconv>
#include <map>
#include <memory>

#include "commands.hpp"
#include "config.hpp"
#include "hierstat/errors.hpp"

namespace hierstat::cli {

namespace {

enum class Kind { Integer, Number, Text, Json, Integers, Numbers, Levels };

struct Flag {
  std::string key;
  Kind kind;
  std::string help;
};

// Flags bound to config keys. Names are the key with '_' replaced by '-'.
const std::map<std::string, std::vector<Flag>>& flag_table() {
  static const std::map<std::string, std::vector<Flag>> table{
      {"gentile",
       {{"d", Kind::Integers, "capacity, or comma-separated list"},
        {"lambdas", Kind::Numbers, "explicit activity grid"},
        {"lambda_min", Kind::Number, "grid start"},
        {"lambda_max", Kind::Number, "grid end"},
        {"points", Kind::Integer, "grid size"},
        {"alpha", Kind::Number, "Gibbs alpha (with beta and epsilon)"},
        {"beta", Kind::Number, "Gibbs beta"},
        {"epsilon", Kind::Number, "money per element"},
        {"sign", Kind::Text, "salary or cost"},
        {"output", Kind::Text, "CSV path (default stdout)"}}},
      {"figures",
       {{"figure", Kind::Text, "all or 1..7"}, {"output_dir", Kind::Text, "output directory"}}},
      {"thermo",
       {{"distribution", Kind::Json, "salary distribution as JSON"},
        {"d", Kind::Integer, "positions per company"},
        {"volume", Kind::Integer, "number of companies V"},
        {"alpha", Kind::Number, "Gibbs alpha"},
        {"beta", Kind::Number, "Gibbs beta"},
        {"n", Kind::Number, "elements per company"},
        {"u", Kind::Number, "money per element"},
        {"lambda", Kind::Number, "activity (delta distribution)"},
        {"path", Kind::Text, "auto, closed_form or chain_rule"},
        {"csv", Kind::Text, "also write one CSV row here"}}},
      {"eos",
       {{"d", Kind::Integer, "positions per company"},
        {"lambdas", Kind::Numbers, "explicit activity grid"},
        {"lambda_min", Kind::Number, "grid start"},
        {"lambda_max", Kind::Number, "grid end"},
        {"points", Kind::Integer, "grid size"},
        {"output", Kind::Text, "CSV path (default stdout)"}}},
      {"simulate",
       {{"levels", Kind::Levels, "capacity:salary,... from the top level down"},
        {"agents", Kind::Integer, "number of agents"},
        {"beta", Kind::Number, "inverse temperature"},
        {"steps", Kind::Integer, "Metropolis steps"},
        {"seed", Kind::Integer, "RNG seed"},
        {"burn_in", Kind::Number, "discarded fraction"},
        {"thinning", Kind::Integer, "estimate stride"},
        {"record_every", Kind::Integer, "trajectory stride (0 = none)"},
        {"batches", Kind::Integer, "batch count for standard errors"},
        {"position_model", Kind::Text, "distinct or indistinct"},
        {"pump_fraction", Kind::Number, "run the pump-and-release scenario"},
        {"trajectory", Kind::Text, "trajectory CSV path"},
        {"summary", Kind::Text, "summary JSON path (default stdout)"}}},
  };
  return table;
}

// Boolean switches, set to true when present.
const std::map<std::string, std::vector<std::string>>& switch_table() {
  static const std::map<std::string, std::vector<std::string>> table{
      {"gentile", {"relative", "pmf"}},
      {"thermo", {"maxwell"}},
      {"simulate", {"oracle"}},
  };
  return table;
}

double to_double(const std::string& s) {
  double x = 0.0;
  const auto* end = s.data() + s.size();
  const auto [p, ec] = std::from_chars(s.data(), end, x);
  if (ec != std::errc() || p != end) throw CLI::ValidationError("not a number: '" + s + "'");
  return x;
}

std::int64_t to_integer(const std::string& s) {
  std::int64_t x = 0;
  const auto* end = s.data() + s.size();
  const auto [p, ec] = std::from_chars(s.data(), end, x);
  if (ec != std::errc() || p != end) throw CLI::ValidationError("not an integer: '" + s + "'");
  return x;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos - start));
    if (pos == std::string::npos) return parts;
    start = pos + 1;
  }
}

nlohmann::json convert(const std::string& value, Kind kind) {
  switch (kind) {
    case Kind::Integer: return to_integer(value);
    case Kind::Number: return to_double(value);
    case Kind::Text: return value;
    case Kind::Json: {
      auto j = nlohmann::json::parse(value, nullptr, false);
      if (j.is_discarded()) throw CLI::ValidationError("invalid JSON: " + value);
      return j;
    }
    case Kind::Integers: {
      const auto parts = split(value, ',');
      if (parts.size() == 1) return to_integer(parts[0]);
      auto j = nlohmann::json::array();
      for (const auto& p : parts) j.push_back(to_integer(p));
      return j;
    }
    case Kind::Numbers: {
      auto j = nlohmann::json::array();
      for (const auto& p : split(value, ',')) j.push_back(to_double(p));
      return j;
    }
    case Kind::Levels: {
      auto j = nlohmann::json::array();
      for (const auto& p : split(value, ',')) {
        const auto pair = split(p, ':');
        if (pair.size() != 2) throw CLI::ValidationError("level must be capacity:salary, got '" + p + "'");
        j.push_back({{"capacity", to_integer(pair[0])}, {"salary", to_double(pair[1])}});
      }
      return j;
    }
  }
  return nullptr;
}

using Command = void (*)(const nlohmann::json&, Io);

const std::map<std::string, std::pair<Command, std::string>>& commands() {
  static const std::map<std::string, std::pair<Command, std::string>> table{
      {"gentile", {cmd_gentile, "Gentile occupation table"}},
      {"figures", {cmd_figures, "reproduce the figure data and plots"}},
      {"thermo", {cmd_thermo, "thermodynamic state of one level"}},
      {"eos", {cmd_eos, "delta-distribution equation of state"}},
      {"simulate", {cmd_simulate, "Metropolis simulation of a hierarchy"}},
  };
  return table;
}

std::string flag_name(std::string key) {
  for (auto& c : key) c = c == '_' ? '-' : c;
  return "--" + key;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Statistics of hierarchical occupation", "hierstat"};
  app.require_subcommand(1);

  struct Pending {
    nlohmann::json overrides = nlohmann::json::object();
    std::string config_path;
  };
  std::map<std::string, Pending> pending;
  std::map<std::string, CLI::App*> subs;

  for (const auto& [name, entry] : commands()) {
    auto* sub = app.add_subcommand(name, entry.second);
    subs[name] = sub;
    auto& p = pending[name];
    sub->add_option("--json-config", p.config_path, "JSON config file");
    for (const auto& f : flag_table().at(name)) {
      sub->add_option_function<std::string>(
          flag_name(f.key),
          [&p, f](const std::string& value) { p.overrides[f.key] = convert(value, f.kind); },
          f.help);
    }
    if (const auto it = switch_table().find(name); it != switch_table().end()) {
      for (const auto& key : it->second) {
        sub->add_flag_callback(flag_name(key), [&p, key]() { p.overrides[key] = true; });
      }
    }
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    for (const auto* sub : app.get_subcommands()) out << sub->help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kOk;
    }
    err << "error: " << e.what() << '\n';
    return kValidation;
  }

  const auto* chosen = app.get_subcommands().front();
  const auto& name = chosen->get_name();
  const Io io{out, err};
  try {
    auto cfg = nlohmann::json::object();
    if (!pending[name].config_path.empty()) cfg = load_config(pending[name].config_path);
    cfg = merge(std::move(cfg), pending[name].overrides);
    commands().at(name).first(cfg, io);
    return kOk;
  } catch (const ValidationError& e) {
    err << "invalid input:\n";
    for (const auto& m : e.violations()) err << "  - " << m << '\n';
    return kValidation;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return kNumerical;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << '\n';
    return kIo;
  }
}

}  // namespace hierstat::cli
