#pragma once

#include <random>
#include <string>
#include <vector>

#include "pvac/field.hpp"

namespace pvac {

/// Initial velocities by name, scaled by `amplitude`:
///  "rest"               v = 0
///  "tangential-shear"   v = (0, sin 2 pi x1, 0)
///  "irrotational-pulse" v = grad[b(x3) (1 + cos 2 pi x1 cos 2 pi x2 / 2)], b Gaussian at x3 = 1/2
///  "compression"        v = -(sin 2 pi x1 / 2 pi, sin 2 pi x2 / 2 pi, x3 - 1/2)
VectorField initial_velocity(const std::string& name, double amplitude, const Grid& g);

const std::vector<std::string>& velocity_presets();

/// rho0 = (x3 (1 - x3))^p at the nodes.
ScalarField power_density(double p, const Grid& g);

/// eps (sin 2 pi x1, sin 2 pi x2, x3 (1 - x3)).
VectorField wave_displacement(double eps, const Grid& g);

/// A smooth, fully three-dimensional periodic displacement of size eps:
/// eps (sin 2 pi x2 sin pi x3, cos 2 pi x1 x3^2, sin 2 pi x1 cos 2 pi x2 x3 (1 - x3)).
VectorField smooth_displacement(double eps, const Grid& g);

/// h = sin 2 pi x1 cos 2 pi x2 x3^2 + cos 2 pi x2 x3 and its exact gradient.
ScalarField smooth_potential(const Grid& g);
VectorField smooth_potential_gradient(const Grid& g);

/// Random sum of a few Fourier modes times quadratics in x3, rescaled so that
/// max |D disp| equals `max_gradient`.
VectorField random_smooth_displacement(double max_gradient, const Grid& g, std::mt19937_64& rng);

}  // namespace pvac
