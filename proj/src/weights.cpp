#include "pvac/weights.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "pvac/stencil.hpp"

namespace pvac {

WeightPreset parse_weight_preset(const std::string& name) {
  if (name == "parabolic") return WeightPreset::Parabolic;
  if (name == "sine") return WeightPreset::Sine;
  if (name == "from-density") return WeightPreset::FromDensity;
  throw ContractViolation("unknown weight preset '" + name + "'");
}

std::string to_string(WeightPreset p) {
  switch (p) {
    case WeightPreset::Parabolic: return "parabolic";
    case WeightPreset::Sine: return "sine";
    case WeightPreset::FromDensity: return "from-density";
  }
  return "?";
}

double alpha_from_gamma(double gamma) {
  if (!(gamma > 1.0) || !std::isfinite(gamma))
    throw InvalidExponentError("gamma must be > 1 (alpha = 1/(gamma - 1)), got " + std::to_string(gamma));
  return 1.0 / (gamma - 1.0);
}

Eigen::ArrayXd flux_weights(const Eigen::ArrayXd& column, const Eigen::ArrayXd& dcolumn, double alpha, double h3) {
  const Index n3 = column.size();
  // Accumulate from both ends and blend so the construction stays symmetric;
  // for profiles symmetric about x3 = 1/2 the two sweeps agree.
  Eigen::ArrayXd up = Eigen::ArrayXd::Zero(n3 + 1);
  Eigen::ArrayXd down = Eigen::ArrayXd::Zero(n3 + 1);
  for (Index k = 0; k < n3; ++k)
    up(k + 1) = up(k) + h3 * (1.0 + alpha) * std::pow(column(k), alpha) * dcolumn(k);
  for (Index k = n3 - 1; k >= 0; --k)
    down(k) = down(k + 1) - h3 * (1.0 + alpha) * std::pow(column(k), alpha) * dcolumn(k);
  Eigen::ArrayXd W(n3 + 1);
  const double scale = std::max(up.abs().maxCoeff(), down.abs().maxCoeff());
  const bool symmetric = (up - down).abs().maxCoeff() <= 1e-12 * std::max(scale, 1e-300);
  for (Index f = 0; f <= n3; ++f) {
    const double x = double(f) / double(n3);
    W(f) = symmetric ? 0.5 * (up(f) + down(f)) : (1.0 - x) * up(f) + x * down(f);
  }
  W(0) = 0.0;
  W(n3) = 0.0;
  return W;
}

namespace {

WeightField finish(WeightField wf, const Grid& g) {
  const Index s = g.column_size();
  wf.w.resize(g.size());
  wf.Dw = VectorField::Zero(g.size(), 3);
  for (int k = 0; k < g.n3; ++k) {
    wf.w.segment(k * s, s).setConstant(wf.column(k));
    wf.Dw.col(2).segment(k * s, s).setConstant(wf.dcolumn(k));
  }
  wf.flux = flux_weights(wf.column, wf.dcolumn, wf.alpha, g.h3);
  return wf;
}

}  // namespace

WeightField build_weight(WeightPreset preset, double gamma, double K, const Grid& g) {
  if (preset == WeightPreset::FromDensity)
    throw ContractViolation("build_weight: from-density needs a density field");
  WeightField wf;
  wf.gamma = gamma;
  wf.alpha = alpha_from_gamma(gamma);
  if (!(K > 0.0)) throw ContractViolation("entropy constant K must be positive");
  wf.K = K;
  wf.preset = preset;
  wf.column.resize(g.n3);
  wf.dcolumn.resize(g.n3);
  const double pi = std::numbers::pi;
  for (int k = 0; k < g.n3; ++k) {
    const double x = g.x3(k);
    if (preset == WeightPreset::Parabolic) {
      wf.column(k) = x * (1.0 - x);
      wf.dcolumn(k) = 1.0 - 2.0 * x;
    } else {
      wf.column(k) = std::sin(pi * x) / pi;
      wf.dcolumn(k) = std::cos(pi * x);
    }
  }
  return finish(std::move(wf), g);
}

WeightField build_weight_from_density(const ScalarField& rho0, double gamma, double K, const Grid& g) {
  require_shape(rho0, g, "build_weight_from_density");
  WeightField wf;
  wf.gamma = gamma;
  wf.alpha = alpha_from_gamma(gamma);
  if (!(K > 0.0)) throw ContractViolation("entropy constant K must be positive");
  wf.K = K;
  wf.preset = WeightPreset::FromDensity;
  if (!all_finite(rho0)) throw InvalidDensityError("density has non-finite values");
  if ((rho0 < 0.0).any()) throw InvalidDensityError("density must be nonnegative");
  if (!(rho0 > 0.0).all()) throw InvalidDensityError("density must be positive at interior nodes");
  const Index s = g.column_size();
  wf.column.resize(g.n3);
  for (int k = 0; k < g.n3; ++k) {
    const auto row = rho0.segment(k * s, s);
    const double r = row(0);
    if ((row - r).abs().maxCoeff() > 1e-12 * std::abs(r))
      throw ContractViolation("from-density weight must be tangentially uniform (row " + std::to_string(k) + ")");
    wf.column(k) = K * std::pow(r, gamma - 1.0);
  }
  // Profile derivative with the same x3 stencil as everything else.
  Grid line(4, 4, g.n3);
  ScalarField col(line.size());
  for (int k = 0; k < g.n3; ++k) col.segment(k * line.column_size(), line.column_size()).setConstant(wf.column(k));
  const ScalarField dcol = partial(col, line, Axis::X3);
  wf.dcolumn.resize(g.n3);
  for (int k = 0; k < g.n3; ++k) wf.dcolumn(k) = dcol(k * line.column_size());
  return finish(std::move(wf), g);
}

VacuumCheck check_physical_vacuum(const WeightField& wf, const Grid& g, double bound) {
  double C = 0.0;
  for (int k = 0; k < g.n3; ++k) {
    const double x = g.x3(k);
    const double d = std::min(x, 1.0 - x);
    const double w = wf.column(k);
    C = std::max({C, w / d, d / w});
  }
  return {C, C < bound};
}

}  // namespace pvac
