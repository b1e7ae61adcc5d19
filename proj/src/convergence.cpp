#include "pvac/convergence.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "pvac/dynamics.hpp"
#include "pvac/presets.hpp"

namespace pvac {

double least_squares_order(const std::vector<double>& h, const std::vector<double>& err) {
  if (h.size() != err.size() || h.size() < 2) throw ContractViolation("least_squares_order: need two or more levels");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = double(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) {
    const double x = std::log(h[i]), y = std::log(err[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

StudyResult finish_study(StudyResult r) {
  std::vector<double> h, e;
  for (std::size_t i = 0; i < r.levels.size(); ++i) {
    h.push_back(r.levels[i].h);
    e.push_back(r.levels[i].error);
    if (i > 0 && !(r.levels[i].error < r.levels[i - 1].error)) r.monotone = false;
  }
  bool positive = true;
  for (double x : e) positive = positive && x > 0.0;
  if (positive && e.size() >= 2) r.order = least_squares_order(h, e);
  else r.note = "zero error level; order not defined";
  if (!r.monotone) r.note += (r.note.empty() ? "" : "; ") + std::string("error sequence is not monotone");
  return r;
}

namespace {

std::string grid_label(const Grid& g) {
  return std::to_string(g.n1) + "x" + std::to_string(g.n2) + "x" + std::to_string(g.n3);
}

struct Profile {
  double w, dw, ddw;
};

Profile profile(WeightPreset p, double x) {
  const double pi = std::numbers::pi;
  if (p == WeightPreset::Parabolic) return {x * (1 - x), 1 - 2 * x, -2.0};
  if (p == WeightPreset::Sine) return {std::sin(pi * x) / pi, std::cos(pi * x), -pi * std::sin(pi * x)};
  throw ContractViolation("manufactured solution needs a closed-form weight preset");
}

}  // namespace

Manufactured manufactured_elliptic(const WeightField& wf, double lambda, const Grid& g) {
  constexpr double tau = 2.0 * std::numbers::pi;
  const double a = wf.alpha;
  Manufactured m;
  m.u = sample(g, [&](double x1, double, double x3) { return std::sin(tau * x1) * profile(wf.preset, x3).w; });
  m.G = sample(g, [&](double x1, double, double x3) {
    const Profile P = profile(wf.preset, x3);
    return std::sin(tau * x1) * ((lambda + tau * tau) * P.w - (1 + a) * P.dw * P.dw - P.w * P.ddw);
  });
  return m;
}

StudyResult elliptic_study(const std::vector<int>& ns, WeightPreset preset, double gamma, double lambda, double tol) {
  StudyResult r;
  r.kind = "elliptic";
  for (int n : ns) {
    const Grid g(n, 4, n);
    const EllipticProblem prob(build_weight(preset, gamma, 1.0, g), lambda, g, tol);
    const Manufactured m = manufactured_elliptic(prob.wf, lambda, g);
    const auto sol = solve(m.G, prob);
    r.levels.push_back({grid_label(g), g.h3, weighted_norm(ScalarField(sol.u - m.u), prob)});
  }
  return finish_study(r);
}

StudyResult piola_study(const std::vector<int>& ns) {
  StudyResult r;
  r.kind = "piola";
  for (int n : ns) {
    const Grid g(n, n, n);
    const Kinematics kin = compute_kinematics(deformation_gradient(smooth_displacement(0.05, g), g));
    r.levels.push_back({grid_label(g), g.h3, piola_divergence(kin, g).abs().maxCoeff()});
  }
  return finish_study(r);
}

StudyResult curl_gradient_study(const std::vector<int>& ns) {
  StudyResult r;
  r.kind = "curl-gradient";
  for (int n : ns) {
    const Grid g(n, n, n);
    const Kinematics kin = compute_kinematics(deformation_gradient(smooth_displacement(0.05, g), g));
    const VectorField Dh = gradient(smooth_potential(g), g);
    VectorField F(g.size(), 3);
    for (Index p = 0; p < g.size(); ++p)
      F.row(p) = (node_matrix(kin.A, p).transpose() * Dh.row(p).transpose().matrix()).transpose().array();
    const VectorField c = lagrangian_curl(gradient(F, g), kin.A);
    r.levels.push_back({grid_label(g), g.h3, c.square().rowwise().sum().sqrt().maxCoeff()});
  }
  return finish_study(r);
}

StudyResult curl_acceleration_study(const std::vector<int>& ns, ForceForm form) {
  StudyResult r;
  r.kind = "curl-residual";
  for (int n : ns) {
    const Grid g(n, n, n);
    const WeightField wf = build_weight(WeightPreset::Parabolic, 2.0, 1.0, g);
    FlowState s = FlowState::identity(g);
    s.disp = smooth_displacement(0.05, g);
    r.levels.push_back({grid_label(g), g.h3, curl_acceleration_residual(s, wf, g, form)});
  }
  return finish_study(r);
}

SimConfig energy_drift_config() {
  SimConfig c;
  c.grid = {32, 32, 64};
  c.gamma = 2.0;
  c.weight = "parabolic";
  c.initial_velocity = "tangential-shear";
  c.amplitude = 1e-3;
  c.T_end = 1.0;
  c.dt = 1e-3;
  c.N_monitor = 2;
  c.output_every = 1000000;
  c.guardrails.enforce = false;
  finalize_config(c);
  return c;
}

StudyResult energy_drift_study(const SimConfig& base, const std::vector<double>& dts) {
  StudyResult r;
  r.kind = "energy-drift";
  for (double dt : dts) {
    SimConfig c = base;
    c.dt = dt;
    finalize_config(c);
    const SimResult res = simulate(c);
    std::ostringstream lab;
    lab << "dt=" << dt;
    r.levels.push_back({lab.str(), dt, res.max_energy_drift});
    if (res.termination != Termination::Completed) r.note = "run stopped early: " + to_string(res.termination);
  }
  return finish_study(r);
}

StudyResult run_study(const std::string& kind) {
  if (kind == "elliptic") return elliptic_study();
  if (kind == "piola") return piola_study();
  if (kind == "curl-residual") return curl_acceleration_study();
  if (kind == "energy-drift") return energy_drift_study(energy_drift_config());
  throw ContractViolation("unknown study '" + kind + "' (elliptic, energy-drift, curl-residual, piola)");
}

std::string format_study(const StudyResult& r) {
  std::ostringstream o;
  o.precision(6);
  o << "study " << r.kind << "\n";
  for (const auto& l : r.levels) o << "  " << l.label << "  h=" << l.h << "  error=" << l.error << "\n";
  o << "  order " << r.order << (r.monotone ? "" : " (non-monotone)") << "\n";
  if (!r.note.empty()) o << "  note: " << r.note << "\n";
  return o.str();
}

}  // namespace pvac
