#include "pvac/presets.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace pvac {

const std::vector<std::string>& velocity_presets() {
  static const std::vector<std::string> names{"rest", "tangential-shear", "irrotational-pulse", "compression"};
  return names;
}

VectorField initial_velocity(const std::string& name, double amplitude, const Grid& g) {
  constexpr double tau = 2.0 * std::numbers::pi;
  using V = std::array<double, 3>;
  if (name == "rest") return VectorField::Zero(g.size(), 3);
  if (name == "tangential-shear")
    return amplitude * sample_vector(g, [&](double x1, double, double) { return V{0.0, std::sin(tau * x1), 0.0}; });
  if (name == "irrotational-pulse") {
    constexpr double s = 0.1;
    return amplitude * sample_vector(g, [&](double x1, double x2, double x3) {
             const double b = std::exp(-(x3 - 0.5) * (x3 - 0.5) / (2 * s * s));
             const double db = -(x3 - 0.5) / (s * s) * b;
             const double c1 = std::cos(tau * x1), c2 = std::cos(tau * x2);
             const double m = 1.0 + 0.5 * c1 * c2;
             return V{-0.5 * tau * std::sin(tau * x1) * c2 * b, -0.5 * tau * c1 * std::sin(tau * x2) * b, db * m};
           });
  }
  if (name == "compression")
    return amplitude * sample_vector(g, [&](double x1, double x2, double x3) {
             return V{-std::sin(tau * x1) / tau, -std::sin(tau * x2) / tau, -(x3 - 0.5)};
           });
  throw ContractViolation("unknown initial velocity preset '" + name + "'");
}

ScalarField power_density(double p, const Grid& g) {
  return sample(g, [&](double, double, double x3) { return std::pow(x3 * (1.0 - x3), p); });
}

}  // namespace pvac

#include "pvac/stencil.hpp"

namespace pvac {

namespace {
constexpr double kTau = 2.0 * std::numbers::pi;
using V3 = std::array<double, 3>;
}  // namespace

VectorField wave_displacement(double eps, const Grid& g) {
  return sample_vector(g, [&](double x1, double x2, double x3) {
    return V3{eps * std::sin(kTau * x1), eps * std::sin(kTau * x2), eps * x3 * (1.0 - x3)};
  });
}

VectorField smooth_displacement(double eps, const Grid& g) {
  const double pi = std::numbers::pi;
  return sample_vector(g, [&](double x1, double x2, double x3) {
    return V3{eps * std::sin(kTau * x2) * std::sin(pi * x3), eps * std::cos(kTau * x1) * x3 * x3,
              eps * std::sin(kTau * x1) * std::cos(kTau * x2) * x3 * (1.0 - x3)};
  });
}

ScalarField smooth_potential(const Grid& g) {
  return sample(g, [](double x1, double x2, double x3) {
    return std::sin(kTau * x1) * std::cos(kTau * x2) * x3 * x3 + std::cos(kTau * x2) * x3;
  });
}

VectorField smooth_potential_gradient(const Grid& g) {
  return sample_vector(g, [](double x1, double x2, double x3) {
    const double s1 = std::sin(kTau * x1), c1 = std::cos(kTau * x1);
    const double s2 = std::sin(kTau * x2), c2 = std::cos(kTau * x2);
    return V3{kTau * c1 * c2 * x3 * x3, -kTau * s1 * s2 * x3 * x3 - kTau * s2 * x3, 2.0 * s1 * c2 * x3 + c2};
  });
}

VectorField random_smooth_displacement(double max_gradient, const Grid& g, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  std::uniform_int_distribution<int> K(0, 2);
  VectorField d = VectorField::Zero(g.size(), 3);
  for (int c = 0; c < 3; ++c)
    for (int mode = 0; mode < 3; ++mode) {
      const int k1 = K(rng), k2 = K(rng);
      const double ph = kTau * U(rng), a = U(rng), b = U(rng), q = U(rng);
      d.col(c) += sample(g, [&](double x1, double x2, double x3) {
        return std::sin(kTau * (k1 * x1 + k2 * x2) + ph) * (a + b * x3 + q * x3 * x3);
      });
    }
  const TensorField D = gradient(d, g);
  const double m = D.abs().maxCoeff();
  return m > 0.0 ? VectorField(d * (max_gradient / m)) : d;
}

}  // namespace pvac
