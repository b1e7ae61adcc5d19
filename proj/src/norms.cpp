#include "pvac/norms.hpp"

#include <cmath>
#include <string>

#include "pvac/stencil.hpp"

namespace pvac {

std::vector<MultiIndex> multi_indices(int lo, int hi) {
  std::vector<MultiIndex> out;
  for (int s = lo; s <= hi; ++s)
    for (int m1 = s; m1 >= 0; --m1)
      for (int m2 = s - m1; m2 >= 0; --m2) out.push_back({m1, m2, s - m1 - m2});
  return out;
}

Eigen::ArrayXd weight_powers(const WeightField& wf, double sigma) { return wf.column.pow(sigma); }

double weighted_integral(const ScalarField& f, const Eigen::ArrayXd& row_factor, const Grid& g) {
  const Index s = g.column_size();
  double total = 0.0;
  for (int k = 0; k < g.n3; ++k) {
    double row = 0.0;
    for (Index q = 0; q < s; ++q) row += f(k * s + q);
    total += row_factor(k) * row;
  }
  return total * g.cell_volume();
}

namespace {

void check_order(int b, int max_order, const Grid& g, const char* what) {
  if (b < 0) throw ContractViolation(std::string(what) + ": negative order");
  if (b > max_order)
    throw ContractViolation(std::string(what) + ": order " + std::to_string(b) + " exceeds the configured maximum " +
                            std::to_string(max_order));
  require_resolution(g, b, b, what);
}

ScalarField sq(const ScalarField& f) { return f.square(); }
ScalarField sq(const VectorField& f) { return f.square().rowwise().sum(); }

template <typename Field>
double x_norm(const Field& F, const WeightField& wf, int b, const Grid& g, int max_order) {
  require_shape(F, g, "norm_X");
  check_order(b, max_order, g, "norm_X");
  double s = 0.0;
  for (const auto& mi : multi_indices(0, b)) {
    const Field d = mixed_partial(F, g, mi[0], mi[1], mi[2]);
    s += weighted_integral(sq(d), weight_powers(wf, wf.alpha + mi[2]), g);
  }
  return std::sqrt(s);
}

// Squared Lie gradient |D_eta F|^2 = |DF A|^2 per node.
ScalarField lie_gradient_sq(const VectorField& F, const Kinematics& kin, const Grid& g) {
  const TensorField DF = gradient(F, g);
  ScalarField out(g.size());
  for (Index p = 0; p < g.size(); ++p) out(p) = (node_matrix(DF, p) * node_matrix(kin.A, p)).squaredNorm();
  return out;
}

ScalarField lie_gradient_sq(const ScalarField& F, const Kinematics& kin, const Grid& g) {
  const VectorField DF = gradient(F, g);
  ScalarField out(g.size());
  for (Index p = 0; p < g.size(); ++p) {
    const Eigen::RowVector3d d = DF.row(p).matrix() * node_matrix(kin.A, p);
    out(p) = d.squaredNorm();
  }
  return out;
}

template <typename Field>
double yz_norm(const Field& F, const WeightField& wf, const Kinematics& kin, int b, const Grid& g, int max_order,
               bool lie, const char* what) {
  require_shape(F, g, what);
  require_shape(kin.J, g, what);
  // The extra gradient inside D_eta widens the stencil by one.
  check_order(b, max_order, g, what);
  if (lie) require_resolution(g, b + 1, b + 1, what);
  const ScalarField Jw = kin.J.pow(-1.0 / wf.alpha);
  double s = 0.0;
  for (const auto& mi : multi_indices(0, b)) {
    const Field d = mixed_partial(F, g, mi[0], mi[1], mi[2]);
    const ScalarField integrand = (lie ? lie_gradient_sq(d, kin, g) : sq(d)) * Jw;
    s += weighted_integral(integrand, weight_powers(wf, 1.0 + wf.alpha + mi[2]), g);
  }
  return std::sqrt(s);
}

}  // namespace

double norm_X(const ScalarField& F, const WeightField& wf, int b, const Grid& g, int max_order) {
  return x_norm(F, wf, b, g, max_order);
}
double norm_X(const VectorField& F, const WeightField& wf, int b, const Grid& g, int max_order) {
  return x_norm(F, wf, b, g, max_order);
}

double norm_Y(const VectorField& F, const WeightField& wf, const Kinematics& kin, int b, const Grid& g, int max_order) {
  return yz_norm(F, wf, kin, b, g, max_order, true, "norm_Y");
}
double norm_Y(const ScalarField& F, const WeightField& wf, const Kinematics& kin, int b, const Grid& g, int max_order) {
  return yz_norm(F, wf, kin, b, g, max_order, true, "norm_Y");
}
double norm_Z(const VectorField& F, const WeightField& wf, const Kinematics& kin, int b, const Grid& g, int max_order) {
  return yz_norm(F, wf, kin, b, g, max_order, false, "norm_Z");
}
double norm_Z(const ScalarField& F, const WeightField& wf, const Kinematics& kin, int b, const Grid& g, int max_order) {
  return yz_norm(F, wf, kin, b, g, max_order, false, "norm_Z");
}

double hardy_ratio(const ScalarField& v, const WeightField& wf, const Grid& g) {
  require_shape(v, g, "hardy_ratio");
  const ScalarField dv = partial(v, g, Axis::X3);
  const double den = weighted_integral(dv.square(), weight_powers(wf, wf.alpha + 1.0), g);
  if (!(den > 0.0)) throw DegenerateTestFunctionError("hardy_ratio: int w^(alpha+1) |d3 v|^2 vanishes");
  const double num = weighted_integral(v.square(), weight_powers(wf, wf.alpha - 1.0), g);
  return num / den;
}

EmbeddingReport embedding_report(const ScalarField& F, const WeightField& wf, int b, const Grid& g, int max_order) {
  EmbeddingReport r;
  r.sup = F.size() ? F.abs().maxCoeff() : 0.0;
  r.xnorm = norm_X(F, wf, b, g, max_order);
  if (r.xnorm > 0.0) r.ratio = r.sup / r.xnorm;
  r.in_regime = b >= int(std::floor(wf.alpha)) + 4;
  return r;
}

}  // namespace pvac
