#include "pvac/dynamics.hpp"

#include <cmath>
#include <limits>

#include "pvac/presets.hpp"

namespace pvac {

namespace {

ScalarField expand_rows(const Eigen::ArrayXd& rows, const Grid& g) {
  ScalarField out(g.size());
  const Index s = g.column_size();
  for (int k = 0; k < g.n3; ++k) out.segment(k * s, s).setConstant(rows(k));
  return out;
}

double kinetic_energy(const FlowState& s, const WeightField& wf, const Grid& g) {
  return 0.5 * weighted_integral(s.v.square().rowwise().sum(), weight_powers(wf, wf.alpha), g);
}

void check_state(const FlowState& s, const Grid& g, const char* what) {
  require_shape(s.disp, g, what);
  require_shape(s.v, g, what);
}

}  // namespace

VectorField acceleration(const FlowState& s, const WeightField& wf, const Grid& g) {
  check_state(s, g, "acceleration");
  const Kinematics kin = kinematics_of(s, g);
  const ScalarField q = wf.w * kin.J.pow(-1.0 / wf.alpha);
  const VectorField Dq = gradient(q, g);
  VectorField a(g.size(), 3);
  const double c = -(1.0 + wf.alpha);
  for (Index p = 0; p < g.size(); ++p) {
    const Eigen::Matrix3d A = node_matrix(kin.A, p);
    const Eigen::Vector3d d = Dq.row(p).transpose().matrix();
    a.row(p) = (c * (A.transpose() * d)).transpose().array();
  }
  return a;
}

ConservativeForce conservative_force(const FlowState& s, const WeightField& wf, const Grid& g) {
  check_state(s, g, "conservative_force");
  TensorField P = face_gradient(s.disp, g);
  const Index cs = g.column_size();
  const double inv_alpha = 1.0 / wf.alpha;
  Eigen::ArrayXd face_pot = Eigen::ArrayXd::Zero(g.n3 + 1);
  Index bad = -1;
  double bad_J = std::numeric_limits<double>::infinity();
  for (int f = 0; f <= g.n3; ++f) {
    const double W = wf.flux(f);
    double pot = 0.0;
    for (Index q = 0; q < cs; ++q) {
      const Index p = f * cs + q;
      if (f == 0 || f == g.n3 || W == 0.0) {
        P.row(p).setZero();
        continue;
      }
      const auto inv = invert3((s.base + node_matrix(P, p)).eval());
      if (!(inv.det > 0.0)) {
        if (!(inv.det >= bad_J)) {
          bad_J = inv.det;
          bad = p;
        }
        continue;
      }
      const double Jw = std::pow(inv.det, -inv_alpha);
      pot += Jw;
      // Flux P^k_i = W J^(-1/alpha) A^k_i stored at column 3*i + k.
      set_node_matrix(P, p, (W * Jw) * inv.inverse.transpose());
    }
    face_pot(f) = W * pot;
  }
  if (bad >= 0) throw DegenerateMapError(bad, bad_J);
  ConservativeForce out;
  out.potential = wf.alpha * g.cell_volume() * face_pot.sum();
  const VectorField div = face_divergence(P, g);
  const ScalarField inv_mass = expand_rows(weight_powers(wf, -wf.alpha), g);
  out.accel = -(div.colwise() * inv_mass);
  return out;
}

VectorField force_acceleration(const FlowState& s, const WeightField& wf, const Grid& g, ForceForm form) {
  return form == ForceForm::Conservative ? conservative_force(s, wf, g).accel : acceleration(s, wf, g);
}

double discrete_energy(const FlowState& s, const WeightField& wf, const Grid& g) {
  return kinetic_energy(s, wf, g) + conservative_force(s, wf, g).potential;
}

double monitored_energy(const FlowState& s, const WeightField& wf, const Grid& g, ForceForm form) {
  if (form == ForceForm::Conservative) return discrete_energy(s, wf, g);
  return zeroth_energy(s, kinematics_of(s, g), wf, g);
}

GuardrailStatus guardrail_status(const Kinematics& kin, const Guardrails& b) {
  GuardrailStatus st;
  st.adev = max_a_deviation(kin, &st.adev_node);
  kin.J.minCoeff(&st.jmin_node);
  kin.J.maxCoeff(&st.jmax_node);
  st.jmin = kin.J(st.jmin_node);
  st.jmax = kin.J(st.jmax_node);
  st.ok = st.adev <= b.A_dev_max && st.jmin >= b.J_lo && st.jmax <= b.J_hi;
  return st;
}

void enforce_guardrails(const Kinematics& kin, const Guardrails& b, double t) {
  const GuardrailStatus st = guardrail_status(kin, b);
  if (st.ok) return;
  std::string what;
  Index node;
  if (st.adev > b.A_dev_max) {
    what = "|A - I| = " + std::to_string(st.adev) + " exceeds " + std::to_string(b.A_dev_max);
    node = st.adev_node;
  } else if (st.jmin < b.J_lo) {
    what = "J = " + std::to_string(st.jmin) + " below " + std::to_string(b.J_lo);
    node = st.jmin_node;
  } else {
    what = "J = " + std::to_string(st.jmax) + " above " + std::to_string(b.J_hi);
    node = st.jmax_node;
  }
  throw GuardrailBreach("guardrail breach at t = " + std::to_string(t) + ": " + what, node, t, st.adev, st.jmin,
                        st.jmax);
}

FlowState step_leapfrog(const FlowState& s, const WeightField& wf, const Grid& g, double dt, ForceForm form,
                        const Guardrails* guard) {
  FlowState n = s;
  n.v += (0.5 * dt) * force_acceleration(s, wf, g, form);
  n.disp += dt * n.v;
  n.v += (0.5 * dt) * force_acceleration(n, wf, g, form);
  n.t = s.t + dt;
  if (guard && guard->enforce) enforce_guardrails(kinematics_of(n, g), *guard, n.t);
  return n;
}

std::string to_string(Termination t) {
  switch (t) {
    case Termination::Completed: return "completed";
    case Termination::GuardrailBreach: return "guardrail-breach";
    case Termination::SolverFailure: return "solver-failure";
  }
  return "?";
}

std::pair<long, double> step_plan(double T_end, double dt) {
  if (!(dt > 0.0)) throw ContractViolation("time step must be positive");
  if (!(T_end >= 0.0)) throw ContractViolation("T_end must be nonnegative");
  long n = std::lround(T_end / dt);
  if (std::abs(double(n) * dt - T_end) > 1e-9 * std::max(1.0, T_end)) {
    n = long(std::ceil(T_end / dt));
    dt = T_end / double(n);
  }
  return {n, dt};
}

FlowState initial_state(const SimConfig& cfg, const Grid& g) {
  FlowState s = FlowState::identity(g);
  s.v = initial_velocity(cfg.initial_velocity, cfg.amplitude, g);
  return s;
}

SimResult simulate(const SimConfig& cfg, const StepObserver& on_step, const ReportObserver& on_report) {
  const Grid g = cfg.make_grid();
  const WeightField wf = make_weight(cfg, g);
  return simulate(cfg, wf, initial_state(cfg, g), on_step, on_report);
}

SimResult simulate(const SimConfig& cfg, const WeightField& wf, const FlowState& initial, const StepObserver& on_step,
                   const ReportObserver& on_report) {
  const Grid g = cfg.make_grid();
  check_state(initial, g, "simulate");
  if (!cfg.dt) throw ContractViolation("simulate: config has no time step (finalize it first)");
  const auto [nsteps, dt] = step_plan(cfg.T_end, *cfg.dt);
  const ForceForm form = cfg.force_form;
  const int every = std::max(1, cfg.output_every);

  SimResult res;
  res.dt = dt;
  FlowState s = initial;
  const double t0 = s.t;

  // Acceleration of the current state; the conservative force yields the
  // staggered potential as a by-product.
  VectorField a;
  double potential = 0.0;
  auto evaluate = [&](const FlowState& st) {
    if (form == ForceForm::Conservative) {
      ConservativeForce cf = conservative_force(st, wf, g);
      a = std::move(cf.accel);
      potential = cf.potential;
    } else {
      a = acceleration(st, wf, g);
    }
  };
  auto energy_of = [&](const FlowState& st, const Kinematics& kin) {
    return form == ForceForm::Conservative ? kinetic_energy(st, wf, g) + potential : zeroth_energy(st, kin, wf, g);
  };
  auto report = [&](const FlowState& st, const Kinematics& kin, double energy) {
    EnergyReport r = total_energy(st, kin, wf, cfg.N_monitor, g, cfg.max_derivative_order);
    r.E = energy;
    summarize(r);
    res.trace.push_back(r);
    if (on_report) on_report(st, r);
  };

  evaluate(s);
  {
    const Kinematics kin = kinematics_of(s, g);
    res.E0 = energy_of(s, kin);
    if (cfg.guardrails.enforce) enforce_guardrails(kin, cfg.guardrails, s.t);
    if (on_step) on_step(s);
    report(s, kin, res.E0);
  }
  const double scale = res.E0 != 0.0 ? std::abs(res.E0) : 1.0;

  for (long n = 1; n <= nsteps; ++n) {
    s.v += (0.5 * dt) * a;
    s.disp += dt * s.v;
    s.t = t0 + double(n) * dt;
    evaluate(s);
    s.v += (0.5 * dt) * a;
    res.steps = n;

    const Kinematics kin = kinematics_of(s, g);
    const double energy = energy_of(s, kin);
    res.final_energy_drift = std::abs(energy - res.E0) / scale;
    res.max_energy_drift = std::max(res.max_energy_drift, res.final_energy_drift);
    if (cfg.guardrails.enforce) {
      const GuardrailStatus st = guardrail_status(kin, cfg.guardrails);
      if (!st.ok) {
        try {
          enforce_guardrails(kin, cfg.guardrails, s.t);
        } catch (const GuardrailBreach& e) {
          res.termination = Termination::GuardrailBreach;
          res.breach = BreachRecord{e.what(), e.node(), e.time(), e.adev(), e.jmin(), e.jmax()};
        }
        break;
      }
    }
    if (on_step) on_step(s);
    if (n % every == 0 || n == nsteps) report(s, kin, energy);
  }
  res.final_state = s;
  return res;
}

double curl_acceleration_residual(const FlowState& s, const WeightField& wf, const Grid& g, ForceForm form) {
  const VectorField a = force_acceleration(s, wf, g, form);
  const Kinematics kin = kinematics_of(s, g);
  const VectorField c = lagrangian_curl(gradient(a, g), kin.A);
  return c.square().rowwise().sum().sqrt().maxCoeff();
}

double curl_transport_residual(const std::vector<FlowState>& history, const Grid& g) {
  if (history.size() < 3) throw ContractViolation("curl_transport_residual: need at least 3 states");
  const double dt = history[1].t - history[0].t;
  if (!(dt > 0.0)) throw ContractViolation("curl_transport_residual: states must advance in time");
  for (std::size_t n = 1; n < history.size(); ++n)
    if (std::abs((history[n].t - history[n - 1].t) - dt) > 1e-9 * dt)
      throw ContractViolation("curl_transport_residual: states are not uniformly spaced");
  std::vector<VectorField> curls;
  curls.reserve(history.size());
  for (const auto& st : history) curls.push_back(lagrangian_curl(gradient(st.v, g), kinematics_of(st, g).A));
  double worst = 0.0;
  for (std::size_t n = 1; n + 1 < history.size(); ++n) {
    const Kinematics kin = kinematics_of(history[n], g);
    const TensorField Dv = gradient(history[n].v, g);
    const KinematicRates rates = kinematic_rates(kin, Dv);
    // eps_ijk (dA)^s_j v^k,_s is the curl pattern of the matrix Dv dA.
    const VectorField rhs = lagrangian_curl(Dv, rates.dA);
    const VectorField lhs = (curls[n + 1] - curls[n - 1]) / (2.0 * dt);
    worst = std::max(worst, (lhs - rhs).square().rowwise().sum().sqrt().maxCoeff());
  }
  return worst;
}

VectorField apply_G_to_map(const VectorField& disp, const Eigen::Matrix3d& base, const EllipticProblem& prob) {
  const Grid& g = prob.grid;
  VectorField out = apply_G(disp, prob);
  // Affine part: lambda (base x)^i minus base(i, 2) times w^-alpha delta3 W.
  Eigen::ArrayXd normal(g.n3);
  for (int k = 0; k < g.n3; ++k)
    normal(k) = (prob.wf.flux(k + 1) - prob.wf.flux(k)) / g.h3 / std::pow(prob.wf.column(k), prob.wf.alpha);
  for (int k = 0; k < g.n3; ++k)
    for (int j = 0; j < g.n2; ++j)
      for (int i = 0; i < g.n1; ++i) {
        const Index p = g.index(i, j, k);
        const Eigen::Vector3d x(g.x1(i), g.x2(j), g.x3(k));
        const Eigen::Vector3d bx = base * x;
        for (int c = 0; c < 3; ++c) out(p, c) += prob.lambda * bx(c) - base(c, 2) * normal(k);
      }
  return out;
}

VectorField reconstruct_eta_from_G(const VectorField& G, const WeightField& wf, double lambda, const Grid& g,
                                   double tol, const Eigen::Matrix3d& base) {
  const EllipticProblem prob(wf, lambda, g, tol);
  require_shape(G, g, "reconstruct_eta_from_G");
  const VectorField affine = apply_G_to_map(VectorField::Zero(g.size(), 3), base, prob);
  const auto sol = solve(VectorField(G - affine), prob);
  FlowState s{sol.u, VectorField::Zero(g.size(), 3), 0.0, base};
  return positions(s, g);
}

}  // namespace pvac
