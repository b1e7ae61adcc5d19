#pragma once

#include <string>
#include <vector>

#include "pvac/config.hpp"
#include "pvac/state.hpp"

namespace pvac {

/// Per-iteration record of the flow-map fixed-point iteration. Entry nu
/// describes iterate eta_nu (nu = 0 is free streaming x + t u0).
struct PicardTrace {
  std::vector<double> defect;  ///< max over time levels of the w^alpha L^2 norm of the acoustic defect
  std::vector<double> adev;    ///< max |A_nu - I| over the path
  std::vector<double> jmin, jmax;
  std::vector<int> solver_iterations;  ///< max CG iterations per produced iterate
  bool aborted = false;
  std::string reason;
  double dt = 0.0;
  long steps = 0;
  VectorField final_disp;  ///< displacement of the last iterate at T_end
};

/// Runs `iterations` sweeps of
///   w^alpha (eta_{nu+1})_tt + (L^e_nu + L^d_nu)(eta_{nu+1} - eta_nu) = F(eta_nu)
/// over [0, T_end], F = w^alpha times the configured force, with the second time
/// difference and a (1/4, 1/2, 1/4) average of the linear term. Coefficients
/// are frozen from eta_nu at each level. The fixed point is the leapfrog path
/// with the same dt.
PicardTrace picard_run(const SimConfig& cfg, int iterations);
PicardTrace picard_run(const SimConfig& cfg, const WeightField& wf, const VectorField& u0, int iterations);

}  // namespace pvac
