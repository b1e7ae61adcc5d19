#include <doctest.h>

#include "oracles.hpp"
#include "pvac/distance.hpp"
#include "pvac/dynamics.hpp"
#include "pvac/picard.hpp"
#include "pvac/presets.hpp"
#include "pvac/verify.hpp"

using namespace pvac;

TEST_SUITE("properties") {

TEST_CASE("invariant suite passes for several seeds") {
  for (unsigned long seed : {1ul, 2ul, 3ul}) {
    for (const auto& r : run_verify(seed)) {
      CAPTURE(seed);
      CAPTURE(r.name);
      CAPTURE(r.detail);
      CHECK(r.passed);
    }
  }
}

TEST_CASE("A D eta = I and J > 0 on random smooth maps") {
  const Grid g(8, 8, 16);
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const TensorField D = deformation_gradient(random_smooth_displacement(0.3, g, rng), g);
    const Kinematics k = compute_kinematics(D);
    double e = 0.0;
    for (Index p = 0; p < g.size(); ++p)
      e = std::max(e, (node_matrix(k.A, p) * node_matrix(D, p) - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff());
    CHECK(e <= 1e-12);
    CHECK(k.J.minCoeff() > 0.0);
  }
}

TEST_CASE("norm_X satisfies the triangle inequality") {
  const Grid g(8, 8, 16);
  const WeightField wf = build_weight(WeightPreset::Sine, 5.0 / 3.0, 1.0, g);
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    const ScalarField f = oracle::gaussian_field(g, rng), h = oracle::gaussian_field(g, rng);
    CHECK(norm_X(ScalarField(f + h), wf, 2, g) <= (norm_X(f, wf, 2, g) + norm_X(h, wf, 2, g)) * (1 + 1e-14));
  }
}

TEST_CASE("conservative leapfrog: energy drift is O(dt^2) over 1000 steps") {
  SimConfig c;
  c.grid = {8, 8, 16};
  c.initial_velocity = "irrotational-pulse";
  c.amplitude = 0.05;
  c.T_end = 1.0;
  c.output_every = 1000000;
  c.guardrails.enforce = false;
  std::vector<double> drift;
  for (double dt : {2e-3, 1e-3}) {
    c.dt = dt;
    finalize_config(c);
    const SimResult r = simulate(c);
    CHECK(r.steps >= 500);
    drift.push_back(r.max_energy_drift);
  }
  CHECK(oracle::order(drift[0], drift[1]) == doctest::Approx(2.0).epsilon(0.15));
  // No secular growth: the last-half maximum is not much larger than the first-half one.
  c.dt = 1e-3;
  finalize_config(c);
  const Grid g = c.make_grid();
  const WeightField wf = make_weight(c, g);
  FlowState s = initial_state(c, g);
  const double E0 = monitored_energy(s, wf, g, c.force_form);
  double first = 0.0, second = 0.0;
  for (int n = 1; n <= 1000; ++n) {
    s = step_leapfrog(s, wf, g, 1e-3, c.force_form);
    const double d = std::abs(monitored_energy(s, wf, g, c.force_form) - E0) / E0;
    double& half = n <= 500 ? first : second;
    half = std::max(half, d);
  }
  CHECK(second <= 2.0 * first);
}

TEST_CASE("Z against a perturbed run stays under its fitted exponential") {
  SimConfig c;
  c.grid = {8, 8, 16};
  c.initial_velocity = "tangential-shear";
  c.amplitude = 1e-3;
  c.T_end = 0.2;
  c.dt = 2e-3;
  c.guardrails.enforce = false;
  finalize_config(c);
  const Grid g = c.make_grid();
  const WeightField wf = make_weight(c, g);
  const FlowState a0 = initial_state(c, g);
  FlowState b0 = a0;
  b0.v += 1e-6 * sample_vector(g, [](double x1, double x2, double) {
            return std::array<double, 3>{std::cos(oracle::kTau * x2), std::sin(oracle::kTau * x1), 0.0};
          });
  std::vector<FlowState> ra, rb;
  simulate(c, wf, a0, [&](const FlowState& s) { ra.push_back(s); });
  simulate(c, wf, b0, [&](const FlowState& s) { rb.push_back(s); });
  const DistanceSeries self = perturbation_distance(ra, ra, wf, g, 2);
  for (double z : self.Z) CHECK(z == 0.0);
  const DistanceSeries d = perturbation_distance(ra, rb, wf, g, 2);
  REQUIRE(d.C);
  CHECK(d.worst_bound_ratio() <= 1.05);
}

TEST_CASE("Picard defects decrease strictly on the reference scenario") {
  SimConfig c;
  c.grid = {8, 8, 16};
  c.initial_velocity = "tangential-shear";
  c.amplitude = 1e-3;
  c.T_end = 0.05;
  c.dt = 0.005;
  finalize_config(c);
  const PicardTrace t = picard_run(c, 4);
  REQUIRE(t.defect.size() == 5);
  for (int nu = 1; nu <= 3; ++nu) CHECK(t.defect[nu] < t.defect[nu - 1]);
}

}  // TEST_SUITE
