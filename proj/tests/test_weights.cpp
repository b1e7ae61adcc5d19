#include <doctest.h>

#include "oracles.hpp"
#include "pvac/presets.hpp"
#include "pvac/weights.hpp"

using namespace pvac;

TEST_SUITE("weights") {

TEST_CASE("alpha from gamma") {
  CHECK(alpha_from_gamma(2.0) == 1.0);
  CHECK(alpha_from_gamma(5.0 / 3.0) == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(alpha_from_gamma(1.4) == doctest::Approx(2.5).epsilon(1e-14));
  CHECK_THROWS_AS(alpha_from_gamma(1.0), InvalidExponentError);
  CHECK_THROWS_AS(alpha_from_gamma(0.5), InvalidExponentError);
}

TEST_CASE("gamma = 2, rho0 = x3 (1 - x3) gives w = rho0, alpha = 1") {
  const Grid g(4, 4, 16);
  const WeightField wf = build_weight_from_density(power_density(1.0, g), 2.0, 1.0, g);
  CHECK(wf.alpha == 1.0);
  const ScalarField exact = sample(g, [](double, double, double x3) { return x3 * (1.0 - x3); });
  CHECK((wf.w - exact).abs().maxCoeff() <= 1e-15);
}

TEST_CASE("gamma = 5/3 from rho0 = (x3 (1 - x3))^(3/2) against a pointwise power oracle") {
  const Grid g(4, 4, 32);
  const double gamma = 5.0 / 3.0, K = 1.0;
  const ScalarField rho = sample(g, [](double, double, double x3) { return std::pow(x3 * (1.0 - x3), 1.5); });
  const WeightField wf = build_weight_from_density(rho, gamma, K, g);
  CHECK(wf.alpha == doctest::Approx(1.5).epsilon(1e-15));
  for (Index p = 0; p < g.size(); ++p) {
    CHECK(std::abs(wf.w(p) - K * std::pow(rho(p), gamma - 1.0)) <= 1e-14);
  }
  const ScalarField parabola = sample(g, [](double, double, double x3) { return x3 * (1.0 - x3); });
  CHECK((wf.w - parabola).abs().maxCoeff() <= 1e-14);
}

TEST_CASE("density errors") {
  const Grid g(4, 4, 8);
  ScalarField rho = power_density(1.0, g);
  rho(3) = -1e-3;
  CHECK_THROWS_AS(build_weight_from_density(rho, 2.0, 1.0, g), InvalidDensityError);
  ScalarField wavy = power_density(1.0, g);
  wavy(1) *= 1.5;
  CHECK_THROWS_AS(build_weight_from_density(wavy, 2.0, 1.0, g), ContractViolation);
  CHECK_THROWS_AS(build_weight_from_density(power_density(1.0, g), 1.0, 1.0, g), InvalidExponentError);
}

TEST_CASE("presets match their closed forms") {
  const Grid g(4, 4, 16);
  const WeightField p = build_weight(WeightPreset::Parabolic, 2.0, 1.0, g);
  const WeightField s = build_weight(WeightPreset::Sine, 2.0, 1.0, g);
  for (int k = 0; k < g.n3; ++k) {
    const double x = g.x3(k);
    CHECK(p.column(k) == doctest::Approx(x * (1.0 - x)).epsilon(1e-15));
    CHECK(p.dcolumn(k) == doctest::Approx(1.0 - 2.0 * x).epsilon(1e-14));
    CHECK(s.column(k) == doctest::Approx(std::sin(oracle::kPi * x) / oracle::kPi).epsilon(1e-15));
    CHECK(s.dcolumn(k) == doctest::Approx(std::cos(oracle::kPi * x)).epsilon(1e-14));
  }
  CHECK(parse_weight_preset("sine") == WeightPreset::Sine);
  CHECK_THROWS(parse_weight_preset("cubic"));
}

TEST_CASE("flux weights vanish on the boundary and difference to (1 + alpha) w^alpha w'") {
  const Grid g(4, 4, 24);
  for (double gamma : {2.0, 5.0 / 3.0, 1.4}) {
    const WeightField wf = build_weight(WeightPreset::Sine, gamma, 1.0, g);
    REQUIRE(wf.flux.size() == g.n3 + 1);
    CHECK(wf.flux(0) == 0.0);
    CHECK(wf.flux(g.n3) == 0.0);
    for (int k = 0; k < g.n3; ++k) {
      const double target = (1.0 + wf.alpha) * std::pow(wf.column(k), wf.alpha) * wf.dcolumn(k);
      CHECK((wf.flux(k + 1) - wf.flux(k)) / g.h3 == doctest::Approx(target).epsilon(1e-10));
    }
    // W approximates w^(1 + alpha) at the faces.
    for (int f = 1; f < g.n3; ++f) {
      const double x = g.x3_face(f);
      CHECK(std::abs(wf.flux(f) - std::pow(std::sin(oracle::kPi * x) / oracle::kPi, 1.0 + wf.alpha)) <= 5e-3);
    }
  }
}

TEST_CASE("physical vacuum constant") {
  SUBCASE("parabolic: C = 2") {
    const Grid g(4, 4, 64);
    const VacuumCheck c = check_physical_vacuum(build_weight(WeightPreset::Parabolic, 2.0, 1.0, g), g);
    CHECK(c.ok);
    CHECK(c.C <= 2.0);
    CHECK(c.C >= 2.0 - 2.0 * g.h3);
  }
  SUBCASE("sine: C <= pi") {
    const Grid g(4, 4, 64);
    const VacuumCheck c = check_physical_vacuum(build_weight(WeightPreset::Sine, 2.0, 1.0, g), g);
    CHECK(c.ok);
    CHECK(c.C <= oracle::kPi);
  }
  SUBCASE("w = 1: C grows like 1 / h3") {
    std::vector<double> C;
    for (int n : {16, 32, 64}) {
      const Grid g(4, 4, n);
      const VacuumCheck c =
          check_physical_vacuum(build_weight_from_density(ScalarField(ScalarField::Ones(g.size())), 2.0, 1.0, g), g);
      CHECK_FALSE(c.ok);
      CHECK(c.C == doctest::Approx(2.0 / g.h3));
      C.push_back(c.C);
    }
    CHECK(C[2] / C[1] == doctest::Approx(2.0));
  }
}

}  // TEST_SUITE
