#pragma once

#include <optional>
#include <string>

#include "pvac/field.hpp"

namespace pvac {

enum class WeightPreset { Parabolic, Sine, FromDensity };

WeightPreset parse_weight_preset(const std::string& name);
std::string to_string(WeightPreset p);

/// The enthalpy weight w = K rho0^(gamma - 1) together with its gradient and
/// the x3 flux weights used by every staggered operator.
///
/// The weight is required to be tangentially uniform (a function of x3
/// only); `column` and `dcolumn` hold that profile. `flux` holds W on the
/// n3 + 1 x3-faces: W vanishes on the two boundary faces and its face
/// differences reproduce (1 + alpha) w^alpha w' exactly, so W is the discrete
/// counterpart of w^(1 + alpha) that makes w^-alpha d3(W d3 .) exact on
/// linear functions.
struct WeightField {
  ScalarField w;
  VectorField Dw;
  double gamma = 2.0;
  double alpha = 1.0;
  double K = 1.0;
  WeightPreset preset = WeightPreset::Parabolic;

  Eigen::ArrayXd column;   ///< w at the n3 row centers
  Eigen::ArrayXd dcolumn;  ///< dw/dx3 at the row centers
  Eigen::ArrayXd flux;     ///< W at the n3 + 1 faces

  /// w^p at the row center of node p (profile lookup).
  double w_at(const Grid& g, Index p) const { return column(p / g.column_size()); }
};

/// alpha = 1 / (gamma - 1). Throws InvalidExponentError for gamma <= 1.
double alpha_from_gamma(double gamma);

/// Closed-form presets: "parabolic" w = x3 (1 - x3), "sine" w = sin(pi x3) / pi.
WeightField build_weight(WeightPreset preset, double gamma, double K, const Grid& g);

/// w = K rho0^(gamma - 1) from a nodal density. Throws InvalidDensityError on
/// negative values or a non-positive interior node, ContractViolation when rho0
/// varies tangentially.
WeightField build_weight_from_density(const ScalarField& rho0, double gamma, double K, const Grid& g);

struct VacuumCheck {
  double C = 0.0;
  bool ok = false;
};

/// C = max(max w/d, max d/w) with d = min(x3, 1 - x3); ok when C < bound.
VacuumCheck check_physical_vacuum(const WeightField& wf, const Grid& g, double bound = 10.0);

/// Builds the face flux weights from a column profile and its derivative.
Eigen::ArrayXd flux_weights(const Eigen::ArrayXd& column, const Eigen::ArrayXd& dcolumn, double alpha, double h3);

}  // namespace pvac
