#include <doctest.h>

#include "oracles.hpp"
#include "pvac/dynamics.hpp"
#include "pvac/presets.hpp"

using namespace pvac;

namespace {

WeightField parabolic(const Grid& g) { return build_weight(WeightPreset::Parabolic, 2.0, 1.0, g); }

SimConfig small_config() {
  SimConfig c;
  c.grid = {8, 8, 16};
  c.initial_velocity = "tangential-shear";
  c.amplitude = 1e-3;
  c.T_end = 0.05;
  c.dt = 0.01;
  finalize_config(c);
  return c;
}

}  // namespace

TEST_SUITE("dynamics") {

TEST_CASE("acceleration at the identity is -(1 + alpha) grad w") {
  const Grid g(8, 8, 16);
  const WeightField wf = parabolic(g);
  const FlowState s = FlowState::identity(g);
  const VectorField exact = sample_vector(g, [](double, double, double x3) {
    return std::array<double, 3>{0.0, 0.0, -2.0 * (1.0 - 2.0 * x3)};
  });
  for (ForceForm form : {ForceForm::Gradient, ForceForm::Conservative}) {
    CAPTURE(to_string(form));
    CHECK((force_acceleration(s, wf, g, form) - exact).abs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("uniform dilation: accel = -(1 + alpha) beta^(-1 - 3/alpha) grad w") {
  const Grid g(8, 8, 16);
  for (double gamma : {2.0, 5.0 / 3.0}) {
    const WeightField wf = build_weight(WeightPreset::Parabolic, gamma, 1.0, g);
    const double beta = 1.1, alpha = wf.alpha;
    FlowState s = FlowState::identity(g);
    s.base = beta * Eigen::Matrix3d::Identity();
    const double scale = -(1.0 + alpha) * std::pow(beta, -1.0 - 3.0 / alpha);
    for (ForceForm form : {ForceForm::Gradient, ForceForm::Conservative}) {
      const VectorField a = force_acceleration(s, wf, g, form);
      CHECK(a.col(0).abs().maxCoeff() <= 1e-13);
      CHECK(a.col(1).abs().maxCoeff() <= 1e-13);
      CHECK((a.col(2) - scale * wf.Dw.col(2)).abs().maxCoeff() <= 1e-11);
    }
  }
}

TEST_CASE("degenerate map is a hard error") {
  const Grid g(8, 8, 16);
  FlowState s = FlowState::identity(g);
  s.base(2, 2) = -1.0;
  CHECK_THROWS_AS(acceleration(s, parabolic(g), g), DegenerateMapError);
}

TEST_CASE("conservative force is minus the gradient of the staggered potential") {
  const Grid g(6, 6, 10);
  const WeightField wf = parabolic(g);
  std::mt19937_64 rng(21);
  FlowState s = FlowState::identity(g);
  s.disp = random_smooth_displacement(0.1, g, rng);
  const ConservativeForce f = conservative_force(s, wf, g);
  const VectorField dir = oracle::gaussian_vector(g, rng);
  const double eps = 1e-6;
  FlowState sp = s, sm = s;
  sp.disp += eps * dir;
  sm.disp -= eps * dir;
  const double dphi = (conservative_force(sp, wf, g).potential - conservative_force(sm, wf, g).potential) / (2 * eps);
  // Nodal mass V w^alpha.
  double work = 0.0;
  for (Index p = 0; p < g.size(); ++p)
    work += g.cell_volume() * wf.w_at(g, p) * (f.accel.row(p) * dir.row(p)).sum();
  CHECK(dphi == doctest::Approx(-work).epsilon(1e-6));
}

TEST_CASE("dt = 0 leaves the state unchanged") {
  const Grid g(8, 8, 16);
  const WeightField wf = parabolic(g);
  FlowState s = FlowState::identity(g);
  s.v = initial_velocity("irrotational-pulse", 0.1, g);
  for (ForceForm form : {ForceForm::Gradient, ForceForm::Conservative}) {
    const FlowState n = step_leapfrog(s, wf, g, 0.0, form);
    CHECK((n.disp == s.disp).all());
    CHECK((n.v == s.v).all());
    CHECK(n.t == s.t);
  }
}

TEST_CASE("curl of the acceleration is independent of v and decreases at the identity") {
  std::vector<double> err;
  for (int n : {16, 32}) {
    const Grid g(n, n, n);
    const WeightField wf = build_weight(WeightPreset::Sine, 2.0, 1.0, g);
    FlowState s = FlowState::identity(g);
    const double r0 = curl_acceleration_residual(s, wf, g);
    s.v.col(1).setConstant(3.0);
    CHECK(curl_acceleration_residual(s, wf, g) == r0);
    s.disp = smooth_displacement(0.05, g);
    err.push_back(curl_acceleration_residual(s, wf, g));
  }
  CHECK(err[1] < err[0] / 3.0);
}

TEST_CASE("curl transport residual") {
  const Grid g(8, 8, 16);
  const WeightField wf = parabolic(g);
  SUBCASE("v = 0 throughout") {
    std::vector<FlowState> h;
    for (int n = 0; n < 4; ++n) {
      FlowState s = FlowState::identity(g);
      s.disp = smooth_displacement(0.02 * (1 + n), g);
      s.t = 0.01 * n;
      h.push_back(s);
    }
    CHECK(curl_transport_residual(h, g) == 0.0);
  }
  SUBCASE("frozen identity, constant v") {
    std::vector<FlowState> h;
    for (int n = 0; n < 3; ++n) {
      FlowState s = FlowState::identity(g);
      s.v.col(0).setConstant(0.4);
      s.t = 0.1 * n;
      h.push_back(s);
    }
    CHECK(curl_transport_residual(h, g) == 0.0);
  }
  SUBCASE("contract") {
    std::vector<FlowState> h(2, FlowState::identity(g));
    CHECK_THROWS_AS(curl_transport_residual(h, g), ContractViolation);
    h.push_back(FlowState::identity(g));
    h[1].t = 0.1;
    h[2].t = 0.5;
    CHECK_THROWS_AS(curl_transport_residual(h, g), ContractViolation);
  }
}

TEST_CASE("guardrail status and enforcement") {
  const Grid g(4, 4, 8);
  FlowState s = FlowState::identity(g);
  const Guardrails bounds;
  CHECK(guardrail_status(kinematics_of(s, g), bounds).ok);
  s.base = 1.2 * Eigen::Matrix3d::Identity();  // A - I = -1/6, J = 1.728
  const GuardrailStatus st = guardrail_status(kinematics_of(s, g), bounds);
  CHECK_FALSE(st.ok);
  CHECK(st.adev == doctest::Approx(1.0 / 6.0));
  try {
    enforce_guardrails(kinematics_of(s, g), bounds, 0.25);
    FAIL("expected GuardrailBreach");
  } catch (const GuardrailBreach& e) {
    CHECK(e.time() == 0.25);
    CHECK(e.adev() == doctest::Approx(1.0 / 6.0));
    CHECK(e.node() >= 0);
  }
}

TEST_CASE("step plan lands on T_end") {
  auto [n, dt] = step_plan(1.0, 0.3);
  CHECK(n == 4);
  CHECK(dt == doctest::Approx(0.25));
  auto [m, dt2] = step_plan(0.05, 0.01);
  CHECK(m == 5);
  CHECK(dt2 == doctest::Approx(0.01));
}

TEST_CASE("simulate: cadence, drift bookkeeping, determinism") {
  SimConfig c = small_config();
  const SimResult r = simulate(c);
  CHECK(r.termination == Termination::Completed);
  CHECK(r.steps == 5);
  CHECK(r.trace.size() == 6);
  CHECK(r.trace.front().t == 0.0);
  CHECK(r.trace.back().t == doctest::Approx(0.05));
  CHECK(r.max_energy_drift >= r.final_energy_drift);
  CHECK(r.max_energy_drift <= 1e-6);
  c.output_every = 2;
  CHECK(simulate(c).trace.size() == 4);  // 0, 2, 4 and the final step
  const SimResult again = simulate(small_config());
  CHECK((again.final_state.disp == r.final_state.disp).all());
}

TEST_CASE("simulate: rest is not stationary, E stays put while higher energies grow") {
  SimConfig c;
  c.grid = {8, 8, 16};
  c.T_end = 0.1;
  c.dt = 0.005;
  finalize_config(c);
  const SimResult r = simulate(c);
  CHECK(r.trace.front().EN == r.trace.front().E);
  CHECK(r.trace.back().EN > r.trace.back().E);
  CHECK(r.final_state.disp.abs().maxCoeff() > 0.0);
  CHECK(r.max_energy_drift <= 1e-5);
}

TEST_CASE("simulate: large shear ends at the guardrail without emitting the breach row") {
  SimConfig c;
  c.grid = {8, 8, 16};
  c.initial_velocity = "tangential-shear";
  c.amplitude = 0.5;
  c.T_end = 1.0;
  finalize_config(c);
  const SimResult r = simulate(c);
  CHECK(r.termination == Termination::GuardrailBreach);
  REQUIRE(r.breach);
  CHECK(r.breach->adev > c.guardrails.A_dev_max);
  for (const auto& row : r.trace) {
    CHECK(row.Adev <= c.guardrails.A_dev_max);
    CHECK(row.Jmin >= c.guardrails.J_lo);
    CHECK(row.Jmax <= c.guardrails.J_hi);
  }
}

TEST_CASE("G of a map") {
  const Grid g(8, 8, 16);
  const EllipticProblem prob(parabolic(g), 10.0, g);
  const VectorField G = apply_G_to_map(VectorField(VectorField::Zero(g.size(), 3)), Eigen::Matrix3d::Identity(), prob);
  const VectorField x = positions(FlowState::identity(g), g);
  CHECK((G.col(0) - 10.0 * x.col(0)).abs().maxCoeff() <= 1e-12);
  CHECK((G.col(2) - (10.0 * x.col(2) - 2.0 * prob.wf.Dw.col(2))).abs().maxCoeff() <= 1e-12);
}

}  // TEST_SUITE
