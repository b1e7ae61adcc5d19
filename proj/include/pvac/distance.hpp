#pragma once

#include <optional>
#include <vector>

#include "pvac/state.hpp"
#include "pvac/weights.hpp"

namespace pvac {

/// Weighted distance between two solutions, with J, A taken from `a`:
///   1/2 int w^alpha |v - vb|^2 + alpha int w^(1+alpha) J^(-1/alpha-2) |J - Jb|^2
///   + sum_{1<=|m|+n<=N-1} 1/2 int w^(alpha+n) |d^m d3^n (v - vb)|^2
///                        + 1/2 int w^(1+alpha+n) J^(-1/alpha) |D_eta d^m d3^n (eta - etab)|^2
double distance_functional(const FlowState& a, const FlowState& b, const WeightField& wf, const Grid& g, int N);

struct DistanceSeries {
  std::vector<double> t;
  std::vector<double> Z;
  std::optional<double> C;  ///< slope of log(Z / Z(0)) against t through the origin

  /// max over t of Z(t) / (Z(0) e^(C t)); at most 1 + tolerance when the bound holds.
  double worst_bound_ratio() const;
};

/// Z(t) along two runs sampled at the same times.
DistanceSeries perturbation_distance(const std::vector<FlowState>& run_a, const std::vector<FlowState>& run_b,
                                     const WeightField& wf, const Grid& g, int N);

/// Least-squares slope of log(Z / Z0) against t through the origin.
std::optional<double> fit_growth_rate(const std::vector<double>& t, const std::vector<double>& Z);

}  // namespace pvac
