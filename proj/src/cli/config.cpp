#include <cmath>
#include <set>

#include "json.hpp"
#include "scar/cli.hpp"
#include "scar/error.hpp"

namespace scar::cli {

using nlohmann::json;

Scheme default_scheme(StateTag initial) {
  switch (initial) {
    case StateTag::vacuum: return Scheme::vacuum;
    case StateTag::z3: return Scheme::z3;
    default: return Scheme::z2;
  }
}

Scheme RunConfig::resolved_scheme() const { return scheme.value_or(default_scheme(model.initial)); }

void apply_term(ModelConfig& model, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) throw ConfigError("term must be name=value, got '" + assignment + "'");
  const std::string name = assignment.substr(0, eq);
  if (!is_term_name(name)) throw ConfigError("unknown term '" + name + "'");
  double v = 0.0;
  try {
    std::size_t used = 0;
    v = std::stod(assignment.substr(eq + 1), &used);
    if (used != assignment.size() - eq - 1) throw std::invalid_argument("trailing text");
  } catch (const std::exception&) {
    throw ConfigError("bad strength in '" + assignment + "'");
  }
  model.terms[name] = v;
}

namespace {

void reject_unknown(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& [k, _] : j.items())
    if (!allowed.count(k)) throw ConfigError("unknown key '" + k + "' in " + where);
}

template <class T>
T get_as(const json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(std::string("config key '") + key + "' has the wrong type");
  }
}

}  // namespace

RunConfig config_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  reject_unknown(j, {"command", "L", "initial", "scheme", "terms", "time", "out", "threads", "seed"}, "config");

  RunConfig c;
  if (j.contains("command")) c.command = get_as<std::string>(j, "command");
  if (j.contains("L")) {
    if (!j["L"].is_number_integer()) throw ConfigError("config key 'L' must be an integer");
    c.model.L = j["L"].get<int>();
  }
  if (j.contains("initial")) c.model.initial = parse_state_tag(get_as<std::string>(j, "initial"));
  if (j.contains("scheme")) c.scheme = parse_scheme(get_as<std::string>(j, "scheme"));
  if (j.contains("terms")) {
    const json& t = j["terms"];
    if (!t.is_object()) throw ConfigError("'terms' must be an object");
    for (const auto& [name, value] : t.items()) {
      if (!is_term_name(name)) throw ConfigError("unknown term '" + name + "'");
      if (!value.is_number()) throw ConfigError("strength of '" + name + "' must be a number");
      c.model.terms[name] = value.get<double>();
    }
  }
  if (j.contains("time")) {
    const json& t = j["time"];
    if (!t.is_object()) throw ConfigError("'time' must be an object");
    reject_unknown(t, {"dt", "t_max"}, "time");
    if (t.contains("dt")) c.dt = get_as<double>(t, "dt");
    if (t.contains("t_max")) c.t_max = get_as<double>(t, "t_max");
  }
  if (j.contains("out")) c.out = get_as<std::string>(j, "out");
  if (j.contains("threads")) {
    if (!j["threads"].is_number_integer()) throw ConfigError("'threads' must be an integer");
    c.threads = j["threads"].get<int>();
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned() && !j["seed"].is_number_integer())
      throw ConfigError("'seed' must be an integer");
    c.seed = j["seed"].get<std::uint64_t>();
  }
  return c;
}

std::string config_to_json(const RunConfig& c) {
  json j;
  if (!c.command.empty()) j["command"] = c.command;
  j["L"] = c.model.L;
  j["initial"] = to_string(c.model.initial);
  if (c.scheme) j["scheme"] = to_string(*c.scheme);
  j["terms"] = json::object();
  for (const auto& [k, v] : c.model.terms) j["terms"][k] = v;
  j["time"] = {{"dt", c.dt}, {"t_max", c.t_max}};
  if (!c.out.empty()) j["out"] = c.out;
  j["threads"] = c.threads;
  j["seed"] = c.seed;
  return j.dump(2);
}

}  // namespace scar::cli
