#pragma once

#include <array>
#include <optional>
#include <string>

#include "pvac/weights.hpp"

namespace pvac {

enum class ForceForm {
  Conservative,  ///< staggered variational force; conserves the discrete energy
  Gradient,      ///< nodal -(1+alpha) A^k_i d_k(w J^(-1/alpha))
};

ForceForm parse_force_form(const std::string& s);
std::string to_string(ForceForm f);

struct Guardrails {
  double A_dev_max = 0.125;
  double J_lo = 2.0 / 3.0;
  double J_hi = 2.0;
  bool enforce = true;
};

struct SimConfig {
  std::array<int, 3> grid{32, 32, 64};
  double gamma = 2.0;
  double K = 1.0;
  std::string weight = "parabolic";
  std::optional<double> density_exponent;  ///< rho0 = (x3(1-x3))^p for "from-density"; default p = alpha
  std::string initial_velocity = "rest";
  double amplitude = 0.0;
  std::optional<double> dt;  ///< filled from the CFL bound when absent
  double T_end = 1.0;
  int N_monitor = 2;
  Guardrails guardrails;
  int output_every = 1;
  int field_every = 0;  ///< 0: final fields only
  double solver_tol = 1e-10;
  int solver_max_iter = 20000;
  double lambda = 10.0;
  double cfl_safety = 0.5;
  ForceForm force_form = ForceForm::Conservative;
  int max_derivative_order = 4;
  double vacuum_bound = 10.0;

  Grid make_grid() const { return Grid(grid[0], grid[1], grid[2]); }
  double alpha() const { return 1.0 / (gamma - 1.0); }
};

/// Parses and validates a JSON config file; defaults are filled in and unknown
/// keys are rejected. Errors are ConfigError naming the key.
SimConfig load_config(const std::string& path);
SimConfig parse_config(const std::string& json_text);

/// Validates ranges and the CFL bound; fills dt when absent.
void finalize_config(SimConfig& cfg);

/// JSON text of a (finalized) config.
std::string config_to_json(const SimConfig& cfg, int indent = 2);

/// cfl_safety * h3 / sqrt(gamma * max w).
double cfl_bound(const SimConfig& cfg, const WeightField& wf, const Grid& g);

/// Builds the weight selected by the config.
WeightField make_weight(const SimConfig& cfg, const Grid& g);

}  // namespace pvac
