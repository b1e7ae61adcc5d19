#pragma once

#include <array>
#include <optional>
#include <vector>

#include "pvac/kinematics.hpp"
#include "pvac/weights.hpp"

namespace pvac {

/// (m1, m2, n): tangential orders m = (m1, m2) and normal order n.
using MultiIndex = std::array<int, 3>;

/// All multi-indices with lo <= |m| + n <= hi, graded, then tangential-first
/// lexicographic within a grade: (1,0,0), (0,1,0), (0,0,1), (2,0,0), ...
std::vector<MultiIndex> multi_indices(int lo, int hi);

inline constexpr int kDefaultMaxOrder = 4;

/// Profile factors w(x3_k)^sigma, one per x3 row.
Eigen::ArrayXd weight_powers(const WeightField& wf, double sigma);

/// sum_p factor(row of p) * f(p) * h1 h2 h3 in node order.
double weighted_integral(const ScalarField& f, const Eigen::ArrayXd& row_factor, const Grid& g);

/// ||F|| in X^{alpha,b}: square root of the sum over |m|+n <= b of int w^(alpha+n) |d^m d3^n F|^2.
double norm_X(const ScalarField& F, const WeightField& wf, int b, const Grid& g, int max_order = kDefaultMaxOrder);
double norm_X(const VectorField& F, const WeightField& wf, int b, const Grid& g, int max_order = kDefaultMaxOrder);

/// Y^{alpha,b}: square root of the sum of int w^(1+alpha+n) J^(-1/alpha) |D_eta d^m d3^n F|^2.
double norm_Y(const VectorField& F, const WeightField& wf, const Kinematics& kin, int b, const Grid& g,
              int max_order = kDefaultMaxOrder);
double norm_Y(const ScalarField& F, const WeightField& wf, const Kinematics& kin, int b, const Grid& g,
              int max_order = kDefaultMaxOrder);

/// Z^{alpha,b}: square root of the sum of int w^(1+alpha+n) J^(-1/alpha) |d^m d3^n F|^2.
double norm_Z(const VectorField& F, const WeightField& wf, const Kinematics& kin, int b, const Grid& g,
              int max_order = kDefaultMaxOrder);
double norm_Z(const ScalarField& F, const WeightField& wf, const Kinematics& kin, int b, const Grid& g,
              int max_order = kDefaultMaxOrder);

/// int w^(alpha-1) v^2 / int w^(alpha+1) (d3 v)^2.
double hardy_ratio(const ScalarField& v, const WeightField& wf, const Grid& g);

struct EmbeddingReport {
  double sup = 0.0;
  double xnorm = 0.0;
  std::optional<double> ratio;  ///< sup / xnorm, empty when F = 0
  bool in_regime = false;       ///< b >= floor(alpha) + 4
};

EmbeddingReport embedding_report(const ScalarField& F, const WeightField& wf, int b, const Grid& g,
                                 int max_order = kDefaultMaxOrder + 1);

}  // namespace pvac
