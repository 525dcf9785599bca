#include "bd/model_json.hpp"

#include <nlohmann/json.hpp>

namespace bd {

namespace {

using nlohmann::json;

double want_number(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number())
    throw ConfigError(std::string("model params: missing numeric '") + key +
                      "'");
  return j[key].get<double>();
}

std::vector<double> want_array(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_array())
    throw ConfigError(std::string("model params: missing array '") + key + "'");
  std::vector<double> out;
  for (const auto& v : j[key]) {
    if (!v.is_number())
      throw ConfigError(std::string("model params: '") + key +
                        "' must contain numbers only");
    out.push_back(v.get<double>());
  }
  return out;
}

}  // namespace

RateModel model_from_json(const nlohmann::json& spec) {
  if (!spec.is_object()) throw ConfigError("model spec must be a JSON object");
  if (!spec.contains("family") || !spec["family"].is_string())
    throw ConfigError("model spec: missing string 'family'");
  if (!spec.contains("z") || !spec["z"].is_number())
    throw ConfigError("model spec: missing numeric 'z'");
  const double z = spec["z"].get<double>();
  int hint = 1024;
  if (spec.contains("i_max_hint")) {
    if (!spec["i_max_hint"].is_number_integer())
      throw ConfigError("model spec: 'i_max_hint' must be an integer");
    hint = spec["i_max_hint"].get<int>();
  }
  const json params = spec.value("params", json::object());
  const std::string fam = spec["family"].get<std::string>();

  if (fam == "constant")
    return RateModel::constant(want_number(params, "a"),
                               want_number(params, "b"), z, hint);
  if (fam == "power_law")
    return RateModel::power_law(
        want_number(params, "A"), want_number(params, "alpha"),
        want_number(params, "B"), want_number(params, "beta"), z, hint);
  if (fam == "metastable")
    return RateModel::metastable(
        want_number(params, "A"), want_number(params, "alpha"),
        want_number(params, "zs"), want_number(params, "q"),
        want_number(params, "gamma"), z, hint);
  if (fam == "tabulated") {
    const std::string tail = params.value("tail", "");
    TailRule rule;
    if (tail == "hold_last_ratio")
      rule = TailRule::HoldLastRatio;
    else if (tail == "error")
      rule = TailRule::Error;
    else
      throw ConfigError(
          "tabulated model must declare tail: 'hold_last_ratio' or 'error'");
    return RateModel::tabulated(want_array(params, "a"),
                                want_array(params, "b"), rule, z, hint);
  }
  throw ConfigError("unknown model family '" + fam + "'");
}

nlohmann::json model_to_json(const RateModel& m) {
  json out;
  out["z"] = m.z();
  out["i_max_hint"] = m.i_max_hint();
  const auto& p = m.params();
  switch (m.family()) {
    case Family::Constant:
      out["family"] = "constant";
      out["params"] = {{"a", p.a}, {"b", p.b}};
      break;
    case Family::PowerLaw:
      out["family"] = "power_law";
      out["params"] = {
          {"A", p.big_a}, {"alpha", p.alpha}, {"B", p.big_b}, {"beta", p.beta}};
      break;
    case Family::Metastable:
      out["family"] = "metastable";
      out["params"] = {{"A", p.big_a},
                       {"alpha", p.alpha},
                       {"zs", p.zs},
                       {"q", p.q},
                       {"gamma", p.gamma}};
      break;
    case Family::Tabulated:
      out["family"] = "tabulated";
      out["params"] = {
          {"a", m.table_a()},
          {"b", m.table_b()},
          {"tail", m.tail_rule() == TailRule::Error ? "error"
                                                    : "hold_last_ratio"}};
      break;
  }
  return out;
}

}  // namespace bd
