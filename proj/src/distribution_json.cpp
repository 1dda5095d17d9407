#include "hierstat/distribution_json.hpp"

#include "hierstat/errors.hpp"

namespace hierstat {

namespace {

double number(const nlohmann::json& j, const char* key, Violations& v) {
  if (!j.contains(key) || !j.at(key).is_number()) {
    v.check(false, std::string("distribution: numeric field '") + key + "' required");
    return 0.0;
  }
  return j.at(key).get<double>();
}

std::vector<double> numbers(const nlohmann::json& j, const char* key, Violations& v) {
  std::vector<double> out;
  if (!j.contains(key) || !j.at(key).is_array()) {
    v.check(false, std::string("distribution: array field '") + key + "' required");
    return out;
  }
  for (const auto& x : j.at(key)) {
    if (!x.is_number()) {
      v.check(false, std::string("distribution: '") + key + "' must hold numbers");
      return {};
    }
    out.push_back(x.get<double>());
  }
  return out;
}

}  // namespace

SalaryDistribution distribution_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("type") || !j.at("type").is_string()) {
    throw ValidationError("distribution: object with string field 'type' required");
  }
  const auto type = j.at("type").get<std::string>();
  Violations v;
  if (type == "delta") {
    const double e0 = number(j, "epsilon0", v);
    v.throw_if_any();
    return Delta{e0};
  }
  if (type == "two_point") {
    const double e1 = number(j, "epsilon1", v);
    const double e2 = number(j, "epsilon2", v);
    const double w = number(j, "weight", v);
    v.throw_if_any();
    return TwoPoint{e1, e2, w};
  }
  if (type == "uniform") {
    const double a = number(j, "a", v);
    const double b = number(j, "b", v);
    v.throw_if_any();
    return Uniform{a, b};
  }
  if (type == "histogram") {
    auto edges = numbers(j, "edges", v);
    auto masses = numbers(j, "masses", v);
    v.throw_if_any();
    return Histogram{std::move(edges), std::move(masses)};
  }
  throw ValidationError("distribution: unknown type '" + type +
                        "' (expected delta, two_point, uniform or histogram)");
}

nlohmann::json distribution_to_json(const SalaryDistribution& dist) {
  struct {
    nlohmann::json operator()(const Delta& d) const {
      return {{"type", "delta"}, {"epsilon0", d.epsilon0}};
    }
    nlohmann::json operator()(const TwoPoint& t) const {
      return {{"type", "two_point"},
              {"epsilon1", t.epsilon1},
              {"epsilon2", t.epsilon2},
              {"weight", t.weight}};
    }
    nlohmann::json operator()(const Uniform& u) const {
      return {{"type", "uniform"}, {"a", u.a}, {"b", u.b}};
    }
    nlohmann::json operator()(const Histogram& h) const {
      return {{"type", "histogram"}, {"edges", h.edges}, {"masses", h.masses}};
    }
  } visitor;
  return std::visit(visitor, dist.variant());
}

}  // namespace hierstat
