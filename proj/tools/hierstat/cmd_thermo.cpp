// thermo: one thermodynamic state from (alpha, beta), (n, u) or, for a
// delta distribution, (lambda, beta).

#include <optional>
#include <sstream>

#include "commands.hpp"
#include "config.hpp"
#include "hierstat/distribution_json.hpp"
#include "hierstat/thermostatics.hpp"
#include "output.hpp"

namespace hierstat::cli {

namespace {

const char* path_name(ThermoPath p) {
  switch (p) {
    case ThermoPath::ClosedForm: return "closed_form";
    case ThermoPath::ChainRule: return "chain_rule";
    default: return "auto";
  }
}

nlohmann::ordered_json to_json(const ThermoState& s) {
  nlohmann::ordered_json j;
  j["alpha"] = s.params.alpha();
  j["beta"] = s.params.beta();
  j["n"] = s.n;
  j["u"] = s.u;
  j["omega"] = s.omega;
  j["psi"] = s.psi;
  j["entropy_total"] = s.entropy_total;
  j["temperature"] = s.temperature;
  j["financial_potential"] = s.financial_potential;
  j["pressure"] = s.pressure;
  j["gibbs_free_energy"] = s.gibbs_free_energy;
  j["volume"] = s.volume;
  j["elements"] = s.elements;
  j["energy"] = s.energy;
  j["residuals"] = {{"entropy", s.residuals.entropy},
                    {"gibbs", s.residuals.gibbs},
                    {"euler", s.residuals.euler}};
  return j;
}

std::string csv_row(const ThermoState& s) {
  std::ostringstream text;
  CsvWriter csv(text, {"alpha", "beta", "n", "u", "omega", "psi", "entropy_total", "temperature",
                       "financial_potential", "pressure", "gibbs_free_energy", "volume",
                       "elements", "energy", "residual_entropy", "residual_gibbs",
                       "residual_euler"});
  csv << s.params.alpha() << s.params.beta() << s.n << s.u << s.omega << s.psi << s.entropy_total
      << s.temperature << s.financial_potential << s.pressure << s.gibbs_free_energy << s.volume
      << s.elements << s.energy << s.residuals.entropy << s.residuals.gibbs << s.residuals.euler;
  csv.end_row();
  return text.str();
}

}  // namespace

void cmd_thermo(const nlohmann::json& j, Io io) {
  Violations v;
  const ConfigReader cfg(j, v);
  for (const char* k : {"distribution", "d", "volume"}) cfg.require(k);
  std::optional<SalaryDistribution> dist;
  if (cfg.has("distribution")) {
    try {
      dist = distribution_from_json(cfg.raw("distribution"));
    } catch (const ValidationError& e) {
      v.absorb(e);
    }
  }
  const auto d = cfg.integer("d", 1);
  const auto volume = cfg.integer("volume", 1);
  v.check(d >= 1, "'d' must be >= 1");
  v.check(volume >= 1, "'volume' must be >= 1");

  const std::string path_text = cfg.text("path", "auto");
  ThermoPath path = ThermoPath::Auto;
  if (path_text == "closed_form") {
    path = ThermoPath::ClosedForm;
  } else if (path_text == "chain_rule") {
    path = ThermoPath::ChainRule;
  } else {
    v.check(path_text == "auto", "'path' must be auto, closed_form or chain_rule");
  }

  const bool by_params = cfg.has("alpha");
  const bool by_targets = cfg.has("n") || cfg.has("u");
  const bool by_activity = cfg.has("lambda");
  v.check(by_params + by_targets + by_activity == 1,
          "give exactly one of (alpha, beta), (n, u) or (lambda, beta)");
  if (by_params || by_activity) {
    cfg.require("beta");
    const auto beta = cfg.number("beta");
    v.check(!beta || *beta > 0.0, "'beta' must be > 0");
  }
  if (by_targets) {
    cfg.require("n");
    cfg.require("u");
  }
  if (by_activity && dist) {
    v.check(dist->is_delta(), "(lambda, beta) needs a delta distribution; give (alpha, beta)");
  }
  const bool maxwell = cfg.boolean("maxwell", false);
  const auto n = cfg.number("n");
  const auto u = cfg.number("u");
  const auto alpha = cfg.number("alpha");
  const auto beta = cfg.number("beta");
  const auto lambda = cfg.number("lambda");
  v.throw_if_any();

  GibbsParams params(0.0, 1.0);
  if (by_params) {
    params = GibbsParams(*alpha, *beta);
  } else if (by_activity) {
    params = params_from_activity(*lambda, *beta, std::get<Delta>(dist->variant()).epsilon0);
  } else {
    if (dist->is_delta()) {
      throw SingularInversion(
          "delta distribution: supply (alpha, beta) or (lambda, beta) instead "
          "(u = -epsilon0 in every state, so (n, u) does not fix beta)");
    }
    params = invert_to_params(*dist, d, *n, *u);
  }

  const auto state = thermo_state(*dist, d, params, volume, path);
  auto out = to_json(state);
  out["path"] = path_name(path);
  if (maxwell) {
    const auto r = maxwell_check(*dist, d, params, volume);
    out["maxwell"] = nlohmann::ordered_json{{"residuals", r.residuals},
                      {"half_step_residuals", r.half_residuals},
                      {"observed_order", r.observed_order},
                      {"relative_step", r.relative_step}};
  }
  io.out << out.dump(2) << '\n';
  if (const auto csv = cfg.text("csv", ""); !csv.empty()) write_file(csv, csv_row(state));
}

}  // namespace hierstat::cli
