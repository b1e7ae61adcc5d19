#include "pvac/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "pvac/presets.hpp"

namespace pvac {

using nlohmann::json;

ForceForm parse_force_form(const std::string& s) {
  if (s == "conservative") return ForceForm::Conservative;
  if (s == "gradient") return ForceForm::Gradient;
  throw ContractViolation("unknown force form '" + s + "'");
}

std::string to_string(ForceForm f) { return f == ForceForm::Conservative ? "conservative" : "gradient"; }

namespace {

void reject_unknown(const json& j, const std::set<std::string>& known, const std::string& prefix) {
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!known.count(it.key())) throw ConfigError(prefix + it.key(), "unknown key");
}

template <typename T>
void read(const json& j, const char* key, T& out, const std::string& prefix = "") {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(prefix + key, std::string("wrong type: ") + e.what());
  }
}

}  // namespace

SimConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("", std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("", "config must be a JSON object");
  reject_unknown(j,
                 {"grid", "gamma", "K", "weight", "density_exponent", "initial_velocity", "amplitude", "dt", "T_end",
                  "N_monitor", "guardrails", "output_every", "field_every", "solver", "lambda", "cfl_safety",
                  "force_form", "max_derivative_order", "vacuum_bound"},
                 "");
  SimConfig c;
  if (j.contains("grid")) {
    const json& gj = j.at("grid");
    if (!gj.is_array() || gj.size() != 3) throw ConfigError("grid", "must be an array of three integers");
    for (int a = 0; a < 3; ++a) {
      if (!gj[a].is_number_integer()) throw ConfigError("grid", "must be an array of three integers");
      c.grid[a] = gj[a].get<int>();
    }
  }
  read(j, "gamma", c.gamma);
  read(j, "K", c.K);
  read(j, "weight", c.weight);
  if (j.contains("density_exponent")) {
    double p = 0.0;
    read(j, "density_exponent", p);
    c.density_exponent = p;
  }
  read(j, "initial_velocity", c.initial_velocity);
  read(j, "amplitude", c.amplitude);
  if (j.contains("dt")) {
    double dt = 0.0;
    read(j, "dt", dt);
    c.dt = dt;
  }
  read(j, "T_end", c.T_end);
  read(j, "N_monitor", c.N_monitor);
  if (j.contains("guardrails")) {
    const json& gj = j.at("guardrails");
    if (!gj.is_object()) throw ConfigError("guardrails", "must be an object");
    reject_unknown(gj, {"A_dev_max", "J_lo", "J_hi", "enforce"}, "guardrails.");
    read(gj, "A_dev_max", c.guardrails.A_dev_max, "guardrails.");
    read(gj, "J_lo", c.guardrails.J_lo, "guardrails.");
    read(gj, "J_hi", c.guardrails.J_hi, "guardrails.");
    read(gj, "enforce", c.guardrails.enforce, "guardrails.");
  }
  read(j, "output_every", c.output_every);
  read(j, "field_every", c.field_every);
  if (j.contains("solver")) {
    const json& sj = j.at("solver");
    if (!sj.is_object()) throw ConfigError("solver", "must be an object");
    reject_unknown(sj, {"tol", "max_iter"}, "solver.");
    read(sj, "tol", c.solver_tol, "solver.");
    read(sj, "max_iter", c.solver_max_iter, "solver.");
  }
  read(j, "lambda", c.lambda);
  read(j, "cfl_safety", c.cfl_safety);
  if (j.contains("force_form")) {
    std::string f;
    read(j, "force_form", f);
    try {
      c.force_form = parse_force_form(f);
    } catch (const ContractViolation& e) {
      throw ConfigError("force_form", e.what());
    }
  }
  read(j, "max_derivative_order", c.max_derivative_order);
  read(j, "vacuum_bound", c.vacuum_bound);
  finalize_config(c);
  return c;
}

SimConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

double cfl_bound(const SimConfig& cfg, const WeightField& wf, const Grid& g) {
  return cfg.cfl_safety * g.h3 / std::sqrt(cfg.gamma * wf.column.maxCoeff());
}

WeightField make_weight(const SimConfig& cfg, const Grid& g) {
  const WeightPreset p = parse_weight_preset(cfg.weight);
  if (p != WeightPreset::FromDensity) return build_weight(p, cfg.gamma, cfg.K, g);
  const double expo = cfg.density_exponent.value_or(alpha_from_gamma(cfg.gamma));
  return build_weight_from_density(power_density(expo, g), cfg.gamma, cfg.K, g);
}

void finalize_config(SimConfig& c) {
  for (int a = 0; a < 3; ++a)
    if (c.grid[a] < 4) throw ConfigError("grid", "every dimension must be at least 4");
  if (!(c.gamma > 1.0) || !std::isfinite(c.gamma))
    throw ConfigError("gamma", "must be > 1 (alpha = 1/(gamma - 1) is undefined otherwise)");
  if (!(c.K > 0.0)) throw ConfigError("K", "must be positive");
  if (c.weight != "parabolic" && c.weight != "sine" && c.weight != "from-density")
    throw ConfigError("weight", "unknown preset '" + c.weight + "' (parabolic, sine, from-density)");
  if (c.density_exponent && !(*c.density_exponent > 0.0)) throw ConfigError("density_exponent", "must be positive");
  bool known = false;
  for (const auto& n : velocity_presets()) known = known || n == c.initial_velocity;
  if (!known) throw ConfigError("initial_velocity", "unknown preset '" + c.initial_velocity + "'");
  if (!std::isfinite(c.amplitude)) throw ConfigError("amplitude", "must be finite");
  if (!(c.T_end >= 0.0)) throw ConfigError("T_end", "must be nonnegative");
  if (c.max_derivative_order < 1) throw ConfigError("max_derivative_order", "must be at least 1");
  if (c.N_monitor < 1 || c.N_monitor > c.max_derivative_order)
    throw ConfigError("N_monitor", "must lie in [1, max_derivative_order]");
  if (c.output_every < 1) throw ConfigError("output_every", "must be at least 1");
  if (c.field_every < 0) throw ConfigError("field_every", "must be nonnegative");
  if (!(c.solver_tol > 0.0 && c.solver_tol <= 1e-4)) throw ConfigError("solver.tol", "must lie in (0, 1e-4]");
  if (c.solver_max_iter < 1) throw ConfigError("solver.max_iter", "must be positive");
  if (!(c.lambda > 0.0)) throw ConfigError("lambda", "must be positive");
  if (!(c.cfl_safety > 0.0 && c.cfl_safety <= 1.0)) throw ConfigError("cfl_safety", "must lie in (0, 1]");
  if (!(c.guardrails.A_dev_max > 0.0)) throw ConfigError("guardrails.A_dev_max", "must be positive");
  if (!(c.guardrails.J_lo > 0.0 && c.guardrails.J_lo < 1.0)) throw ConfigError("guardrails.J_lo", "must lie in (0, 1)");
  if (!(c.guardrails.J_hi > 1.0)) throw ConfigError("guardrails.J_hi", "must exceed 1");
  if (!(c.vacuum_bound > 1.0)) throw ConfigError("vacuum_bound", "must exceed 1");

  const Grid g = c.make_grid();
  WeightField wf;
  try {
    wf = make_weight(c, g);
  } catch (const Error& e) {
    throw ConfigError("weight", e.what());
  }
  const VacuumCheck vc = check_physical_vacuum(wf, g, c.vacuum_bound);
  if (!vc.ok)
    throw ConfigError("weight", "not comparable to the boundary distance (C = " + std::to_string(vc.C) +
                                    ", bound " + std::to_string(c.vacuum_bound) + ")");
  const double bound = cfl_bound(c, wf, g);
  if (!c.dt) {
    c.dt = bound;
  } else if (!(*c.dt > 0.0)) {
    throw ConfigError("dt", "must be positive");
  } else if (*c.dt > bound * (1.0 + 1e-12)) {
    std::ostringstream m;
    m.precision(6);
    m << "violates the CFL bound: dt = " << *c.dt << " > " << bound << " = cfl_safety * h3 / sqrt(gamma * max w)";
    throw ConfigError("dt", m.str());
  }
}

std::string config_to_json(const SimConfig& c, int indent) {
  json j;
  j["grid"] = c.grid;
  j["gamma"] = c.gamma;
  j["K"] = c.K;
  j["weight"] = c.weight;
  if (c.density_exponent) j["density_exponent"] = *c.density_exponent;
  j["initial_velocity"] = c.initial_velocity;
  j["amplitude"] = c.amplitude;
  if (c.dt) j["dt"] = *c.dt;
  j["T_end"] = c.T_end;
  j["N_monitor"] = c.N_monitor;
  j["guardrails"] = {{"A_dev_max", c.guardrails.A_dev_max},
                     {"J_lo", c.guardrails.J_lo},
                     {"J_hi", c.guardrails.J_hi},
                     {"enforce", c.guardrails.enforce}};
  j["output_every"] = c.output_every;
  j["field_every"] = c.field_every;
  j["solver"] = {{"tol", c.solver_tol}, {"max_iter", c.solver_max_iter}};
  j["lambda"] = c.lambda;
  j["cfl_safety"] = c.cfl_safety;
  j["force_form"] = to_string(c.force_form);
  j["max_derivative_order"] = c.max_derivative_order;
  j["vacuum_bound"] = c.vacuum_bound;
  return j.dump(indent);
}

}  // namespace pvac
