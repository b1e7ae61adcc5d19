#include <doctest.h>

#include "oracles.hpp"
#include "pvac/distance.hpp"
#include "pvac/dynamics.hpp"
#include "pvac/linear_ops.hpp"
#include "pvac/picard.hpp"
#include "pvac/presets.hpp"

using namespace pvac;

namespace {

WeightField parabolic(const Grid& g) { return build_weight(WeightPreset::Parabolic, 2.0, 1.0, g); }

SimConfig picard_config() {
  SimConfig c;
  c.grid = {8, 8, 16};
  c.initial_velocity = "tangential-shear";
  c.amplitude = 1e-3;
  c.T_end = 0.05;
  c.dt = 0.005;
  finalize_config(c);
  return c;
}

}  // namespace

TEST_SUITE("picard") {

TEST_CASE("constant fields are in the kernel of L^e and L^d") {
  const Grid g(8, 8, 16);
  std::mt19937_64 rng(1);
  const Kinematics k = compute_kinematics(deformation_gradient(random_smooth_displacement(0.1, g, rng), g));
  VectorField G(g.size(), 3);
  G.col(0).setConstant(1.5);
  G.col(1).setConstant(-2.0);
  G.col(2).setConstant(0.25);
  for (LinearKind kind : {LinearKind::Elastic, LinearKind::Divergence})
    CHECK(linear_operator_apply(kind, G, k, parabolic(g), g).abs().maxCoeff() <= 1e-12);
}

TEST_CASE("L^e at the identity is the weighted normal flux for x3-only fields") {
  const Grid g(8, 8, 16);
  const WeightField wf = parabolic(g);
  const VectorField G = sample_vector(g, [](double, double, double x3) {
    return std::array<double, 3>{std::sin(3.0 * x3), x3 * x3, std::cos(2.0 * x3)};
  });
  const VectorField Le = linear_operator_apply(LinearKind::Elastic, G, identity_kinematics(g), wf, g);
  const Index s = g.column_size();
  const double h2 = g.h3 * g.h3;
  double worst = 0.0;
  for (int c = 0; c < 3; ++c)
    for (int k = 0; k < g.n3; ++k) {
      const double up = k + 1 < g.n3 ? wf.flux(k + 1) * (G((k + 1) * s, c) - G(k * s, c)) : 0.0;
      const double dn = k > 0 ? wf.flux(k) * (G(k * s, c) - G((k - 1) * s, c)) : 0.0;
      for (Index q = 0; q < s; ++q) worst = std::max(worst, std::abs(Le(k * s + q, c) + (up - dn) / h2));
    }
  CHECK(worst <= 1e-11);
}

TEST_CASE("L^e is symmetric and positive semidefinite") {
  const Grid g(6, 6, 10);
  std::mt19937_64 rng(2);
  const WeightField wf = parabolic(g);
  const Kinematics k = compute_kinematics(deformation_gradient(random_smooth_displacement(0.1, g, rng), g));
  const VectorField F = oracle::gaussian_vector(g, rng), G = oracle::gaussian_vector(g, rng);
  for (LinearKind kind : {LinearKind::Elastic, LinearKind::Divergence}) {
    const double a = (linear_operator_apply(kind, F, k, wf, g) * G).sum();
    const double b = (F * linear_operator_apply(kind, G, k, wf, g)).sum();
    CHECK(std::abs(a - b) <= 1e-10 * std::max(1.0, std::abs(a)));
    CHECK((linear_operator_apply(kind, F, k, wf, g) * F).sum() >= -1e-10);
  }
}

TEST_CASE("L^c requires an antisymmetric H") {
  const Grid g(6, 6, 10);
  std::mt19937_64 rng(3);
  const TensorField T = oracle::gaussian_tensor(g, rng);
  TensorField H(g.size(), 9);
  for (Index p = 0; p < g.size(); ++p) {
    const Eigen::Matrix3d M = node_matrix(T, p);
    set_node_matrix(H, p, Eigen::Matrix3d(M - M.transpose()));
  }
  const Kinematics k = identity_kinematics(g);
  CHECK_NOTHROW(linear_operator_apply_curl(H, k, parabolic(g), g));
  CHECK_THROWS_AS(linear_operator_apply_curl(T, k, parabolic(g), g), ContractViolation);
}

TEST_CASE("zero iterations report the free-streaming defect only") {
  const PicardTrace t = picard_run(picard_config(), 0);
  REQUIRE(t.defect.size() == 1);
  CHECK(t.defect[0] > 0.0);
  CHECK_FALSE(t.aborted);
}

TEST_CASE("u0 = 0: one iteration reduces the defect") {
  SimConfig c = picard_config();
  c.initial_velocity = "rest";
  c.amplitude = 0.0;
  finalize_config(c);
  const PicardTrace t = picard_run(c, 1);
  REQUIRE(t.defect.size() == 2);
  CHECK(t.defect[1] < t.defect[0]);
}

TEST_CASE("the fixed point is the leapfrog path with the same dt") {
  const SimConfig c = picard_config();
  const PicardTrace t = picard_run(c, 6);
  REQUIRE(t.defect.size() == 7);
  for (int nu = 1; nu <= 3; ++nu) CHECK(t.defect[nu] <= 0.5 * t.defect[nu - 1]);
  const SimResult sim = simulate(c);
  CHECK((t.final_disp - sim.final_state.disp).abs().maxCoeff() <= 1e-12);
}

TEST_CASE("distance functional") {
  const Grid g(8, 8, 16);
  const WeightField wf = parabolic(g);
  FlowState a = FlowState::identity(g);
  a.v = initial_velocity("irrotational-pulse", 0.1, g);
  SUBCASE("identical states") { CHECK(distance_functional(a, a, wf, g, 2) == 0.0); }
  SUBCASE("uniform velocity offset: Z = delta^2 / 2 int w") {
    FlowState b = a;
    const double delta = 1e-6;
    b.v.col(0) += delta;
    const double Z = distance_functional(a, b, wf, g, 2);
    const double exact = 0.5 * delta * delta * oracle::midpoint_x3(g, [](double x) { return x * (1 - x); });
    CHECK(Z == doctest::Approx(exact).epsilon(1e-9));
    CHECK(std::abs(Z - 0.5 * delta * delta / 6.0) <= 0.5 * delta * delta * 2e-3);
  }
  SUBCASE("mismatched runs") {
    const std::vector<FlowState> r1(3, a), r2(2, a);
    CHECK_THROWS_AS(perturbation_distance(r1, r2, wf, g, 2), ContractViolation);
  }
}

TEST_CASE("growth-rate fit through the origin") {
  std::vector<double> t, Z;
  for (int i = 0; i <= 10; ++i) {
    t.push_back(0.1 * i);
    Z.push_back(2.0 * std::exp(0.7 * t.back()));
  }
  const auto C = fit_growth_rate(t, Z);
  REQUIRE(C);
  CHECK(*C == doctest::Approx(0.7).epsilon(1e-12));
  DistanceSeries s{t, Z, C};
  CHECK(s.worst_bound_ratio() == doctest::Approx(1.0).epsilon(1e-12));
}

}  // TEST_SUITE
