#include "pvac/picard.hpp"

#include <cmath>

#include "pvac/dynamics.hpp"
#include "pvac/linear_ops.hpp"
#include "pvac/pcg.hpp"
#include "pvac/presets.hpp"

namespace pvac {

namespace {

double weighted_l2(const VectorField& f, const WeightField& wf, const Grid& g) {
  return std::sqrt(weighted_integral(f.square().rowwise().sum(), weight_powers(wf, wf.alpha), g));
}

ScalarField row_field(const Eigen::ArrayXd& rows, const Grid& g) {
  ScalarField out(g.size());
  const Index s = g.column_size();
  for (int k = 0; k < g.n3; ++k) out.segment(k * s, s).setConstant(rows(k));
  return out;
}

}  // namespace

PicardTrace picard_run(const SimConfig& cfg, int iterations) {
  const Grid g = cfg.make_grid();
  const WeightField wf = make_weight(cfg, g);
  return picard_run(cfg, wf, initial_velocity(cfg.initial_velocity, cfg.amplitude, g), iterations);
}

PicardTrace picard_run(const SimConfig& cfg, const WeightField& wf, const VectorField& u0, int iterations) {
  if (iterations < 0) throw ContractViolation("picard_run: iterations must be nonnegative");
  if (!cfg.dt) throw ContractViolation("picard_run: config has no time step");
  const Grid g = cfg.make_grid();
  require_shape(u0, g, "picard_run");
  const auto [M, dt] = step_plan(cfg.T_end, *cfg.dt);
  if (M < 2) throw ContractViolation("picard_run: need at least two time steps");
  const ForceForm form = cfg.force_form;

  PicardTrace tr;
  tr.dt = dt;
  tr.steps = M;

  const ScalarField mass = row_field(weight_powers(wf, wf.alpha), g);
  auto accel_of = [&](const VectorField& disp) {
    return force_acceleration(FlowState{disp, VectorField::Zero(g.size(), 3), 0.0, Eigen::Matrix3d::Identity()}, wf,
                              g, form);
  };

  const VectorField a0 = accel_of(VectorField::Zero(g.size(), 3));
  const VectorField start = dt * u0 + (0.5 * dt * dt) * a0;

  std::vector<VectorField> path(M + 1);
  for (long n = 0; n <= M; ++n) path[n] = (double(n) * dt) * u0;

  for (int nu = 0;; ++nu) {
    // Frozen data of eta_nu: accelerations, kinematics, guardrail stats.
    std::vector<VectorField> acc(M);
    std::vector<Kinematics> kin(M);
    double adev = 0.0, jmin = std::numeric_limits<double>::infinity(), jmax = 0.0;
    bool breach = false;
    for (long n = 0; n < M; ++n) {
      kin[n] = compute_kinematics(deformation_gradient(path[n], g));
      acc[n] = n == 0 ? a0 : accel_of(path[n]);
      const GuardrailStatus st = guardrail_status(kin[n], cfg.guardrails);
      adev = std::max(adev, st.adev);
      jmin = std::min(jmin, st.jmin);
      jmax = std::max(jmax, st.jmax);
      breach = breach || !st.ok;
    }
    {
      const Kinematics kl = compute_kinematics(deformation_gradient(path[M], g));
      const GuardrailStatus st = guardrail_status(kl, cfg.guardrails);
      adev = std::max(adev, st.adev);
      jmin = std::min(jmin, st.jmin);
      jmax = std::max(jmax, st.jmax);
      breach = breach || !st.ok;
    }
    double defect = weighted_l2(path[1] - start, wf, g) / (dt * dt);
    for (long n = 1; n < M; ++n)
      defect = std::max(defect,
                        weighted_l2((path[n + 1] - 2.0 * path[n] + path[n - 1]) / (dt * dt) - acc[n], wf, g));
    tr.defect.push_back(defect);
    tr.adev.push_back(adev);
    tr.jmin.push_back(jmin);
    tr.jmax.push_back(jmax);
    if (breach && cfg.guardrails.enforce) {
      tr.aborted = true;
      tr.reason = "iterate " + std::to_string(nu) + " left the guardrails (|A - I| = " + std::to_string(adev) +
                  ", J in [" + std::to_string(jmin) + ", " + std::to_string(jmax) + "])";
      break;
    }
    if (nu == iterations) break;

    std::vector<VectorField> next(M + 1);
    next[0] = VectorField::Zero(g.size(), 3);
    next[1] = start;
    VectorField d_prev = next[0] - path[0];
    VectorField d_cur = next[1] - path[1];
    int max_it = 0;
    VectorField prec(g.size(), 3);
    for (int c = 0; c < 3; ++c) prec.col(c) = (dt * dt) / mass;
    for (long n = 1; n < M; ++n) {
      const FrozenFaces ff = freeze_faces(kin[n], wf, g);
      auto L = [&](const VectorField& x) { return apply_elastic_plus_divergence(x, ff, g); };
      const VectorField lin = L(VectorField(0.5 * d_cur + 0.25 * d_prev));
      const VectorField rhs =
          (acc[n] - (path[n + 1] - 2.0 * next[n] + next[n - 1]) / (dt * dt)).colwise() * mass - lin;
      auto apply = [&](const VectorField& x) {
        return VectorField((x.colwise() * mass) / (dt * dt) + 0.25 * L(x));
      };
      VectorField d_next = d_cur;  // warm start
      const double rn = std::sqrt(rhs.square().sum());
      const double target = cfg.solver_tol * (rn > 0.0 ? rn : 1.0);
      auto measure = [](const VectorField& r) { return std::sqrt(r.square().sum()); };
      const PcgResult res = pcg(apply, rhs, prec, d_next, target, cfg.solver_max_iter, measure);
      if (!res.converged)
        throw SolverFailure("picard linear solve did not converge at level " + std::to_string(n), res.residual,
                            res.iterations);
      max_it = std::max(max_it, res.iterations);
      next[n + 1] = path[n + 1] + d_next;
      d_prev = std::move(d_cur);
      d_cur = std::move(d_next);
    }
    tr.solver_iterations.push_back(max_it);
    path = std::move(next);
  }
  tr.final_disp = path[M];
  return tr;
}

}  // namespace pvac
