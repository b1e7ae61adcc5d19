#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "pvac/config.hpp"
#include "pvac/degelliptic.hpp"
#include "pvac/energies.hpp"
#include "pvac/state.hpp"

namespace pvac {

/// eta_tt = -(1+alpha) A^k_i d_k(w J^(-1/alpha)), evaluated at the nodes.
/// Equal to -w^-alpha (w^(1+alpha) A^k_i J^(-1/alpha)),_k for smooth maps
/// by the Piola identity; written as a Lagrangian gradient so its discrete
/// curl_eta vanishes at stencil order. Never divides by w.
VectorField acceleration(const FlowState& s, const WeightField& wf, const Grid& g);

struct ConservativeForce {
  VectorField accel;
  double potential = 0.0;  ///< alpha * sum_faces V W_f J_f^(-1/alpha)
};

/// Minus the gradient of the staggered potential, divided by the nodal mass
/// V w^alpha. Face kinematics use the face difference in x3 and the averaged
/// nodal tangential derivatives; fluxes vanish on the boundary faces.
ConservativeForce conservative_force(const FlowState& s, const WeightField& wf, const Grid& g);

VectorField force_acceleration(const FlowState& s, const WeightField& wf, const Grid& g, ForceForm form);

/// 1/2 sum V w^alpha |v|^2 plus the staggered potential: the quantity the
/// leapfrog integrator with the conservative force preserves to O(dt^2).
double discrete_energy(const FlowState& s, const WeightField& wf, const Grid& g);

/// discrete_energy for the conservative force, zeroth_energy otherwise.
double monitored_energy(const FlowState& s, const WeightField& wf, const Grid& g, ForceForm form);

struct GuardrailStatus {
  double adev = 0.0, jmin = 0.0, jmax = 0.0;
  Index adev_node = -1, jmin_node = -1, jmax_node = -1;
  bool ok = true;
};

GuardrailStatus guardrail_status(const Kinematics& kin, const Guardrails& bounds);
/// Throws GuardrailBreach at time t when the status is not ok.
void enforce_guardrails(const Kinematics& kin, const Guardrails& bounds, double t);

/// Kick-drift-kick. With `guard` set (and enforcing), the new state is checked
/// and a breach throws GuardrailBreach.
FlowState step_leapfrog(const FlowState& s, const WeightField& wf, const Grid& g, double dt,
                        ForceForm form = ForceForm::Conservative, const Guardrails* guard = nullptr);

enum class Termination { Completed, GuardrailBreach, SolverFailure };
std::string to_string(Termination t);

struct BreachRecord {
  std::string what;
  Index node = -1;
  double time = 0.0, adev = 0.0, jmin = 0.0, jmax = 0.0;
};

struct SimResult {
  std::vector<EnergyReport> trace;
  FlowState final_state;
  Termination termination = Termination::Completed;
  std::optional<BreachRecord> breach;
  double dt = 0.0;
  long steps = 0;
  double E0 = 0.0;
  double max_energy_drift = 0.0;  ///< max over steps of |E - E0| / E0
  double final_energy_drift = 0.0;
};

using StepObserver = std::function<void(const FlowState&)>;
using ReportObserver = std::function<void(const FlowState&, const EnergyReport&)>;

/// Number of steps and the step actually used to land on T_end.
std::pair<long, double> step_plan(double T_end, double dt);

/// Integrates the configured scenario to T_end or the first guardrail breach.
/// `on_step` sees every state (including t = 0); `on_report` sees each emitted row.
SimResult simulate(const SimConfig& cfg, const StepObserver& on_step = {}, const ReportObserver& on_report = {});

/// Same from an explicit initial state and weight.
SimResult simulate(const SimConfig& cfg, const WeightField& wf, const FlowState& initial,
                   const StepObserver& on_step = {}, const ReportObserver& on_report = {});

/// Initial state of a config: eta = x, v = preset velocity.
FlowState initial_state(const SimConfig& cfg, const Grid& g);

/// max |curl_eta(acceleration)| for the selected force.
double curl_acceleration_residual(const FlowState& s, const WeightField& wf, const Grid& g,
                                  ForceForm form = ForceForm::Gradient);

/// max over interior levels and nodes of
///   |(curl_eta v)^(n+1) - (curl_eta v)^(n-1)| / (2 dt) - eps_ijk (dA)^s_j v^k,_s|
/// for states at uniform spacing in time.
double curl_transport_residual(const std::vector<FlowState>& history, const Grid& g);

/// G applied to the map eta = base x + disp; the affine part is handled
/// exactly (tangential second differences of x vanish, the normal flux of x3
/// is W on the faces).
VectorField apply_G_to_map(const VectorField& disp, const Eigen::Matrix3d& base, const EllipticProblem& prob);

/// Solves G eta = G_rhs for eta = base x + disp and returns the nodal positions.
VectorField reconstruct_eta_from_G(const VectorField& G, const WeightField& wf, double lambda, const Grid& g,
                                   double tol = 1e-10, const Eigen::Matrix3d& base = Eigen::Matrix3d::Identity());

}  // namespace pvac
