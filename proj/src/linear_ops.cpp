#include "pvac/linear_ops.hpp"

#include <cmath>

#include "pvac/stencil.hpp"

namespace pvac {

FrozenFaces freeze_faces(const Kinematics& frozen, const WeightField& wf, const Grid& g) {
  require_shape(frozen.J, g, "freeze_faces");
  FrozenFaces ff;
  ff.inv_alpha = 1.0 / wf.alpha;
  ff.A.resize(face_count(g), 9);
  for (int c = 0; c < 9; ++c) ff.A.col(c) = face_average3(ScalarField(frozen.A.col(c)), g);
  const ScalarField Jf = face_average3(frozen.J, g);
  ff.weight = ScalarField::Zero(face_count(g));
  const Index s = g.column_size();
  for (int f = 1; f < g.n3; ++f)
    for (Index q = 0; q < s; ++q) ff.weight(f * s + q) = wf.flux(f) * std::pow(Jf(f * s + q), -ff.inv_alpha);
  return ff;
}

VectorField apply_linear(LinearKind which, const VectorField& G, const FrozenFaces& ff, const Grid& g) {
  if (which == LinearKind::Curl) throw ContractViolation("apply_linear: use linear_operator_apply_curl for L^c");
  const TensorField DG = face_gradient(G, g);
  TensorField P(DG.rows(), 9);
  for (Index p = 0; p < DG.rows(); ++p) {
    const double c = ff.weight(p);
    if (c == 0.0) {
      P.row(p).setZero();
      continue;
    }
    const Eigen::Matrix3d A = node_matrix(ff.A, p);
    const Eigen::Matrix3d M = node_matrix(DG, p) * A;  // D_eta G
    Eigen::Matrix3d flux;
    if (which == LinearKind::Elastic) {
      // P^k_i = c A^k_r (D_eta G)^i_r, i.e. (D_eta G) A^T at (i, k).
      flux = c * M * A.transpose();
    } else {
      // P^k_i = (c / alpha) A^k_i div_eta G.
      flux = (c * ff.inv_alpha * M.trace()) * A.transpose();
    }
    set_node_matrix(P, p, flux);
  }
  return -face_divergence(P, g);
}

VectorField apply_elastic_plus_divergence(const VectorField& G, const FrozenFaces& ff, const Grid& g) {
  const TensorField DG = face_gradient(G, g);
  TensorField P(DG.rows(), 9);
  for (Index p = 0; p < DG.rows(); ++p) {
    const double c = ff.weight(p);
    if (c == 0.0) {
      P.row(p).setZero();
      continue;
    }
    const Eigen::Matrix3d A = node_matrix(ff.A, p);
    const Eigen::Matrix3d M = node_matrix(DG, p) * A;
    const Eigen::Matrix3d flux = c * (M + ff.inv_alpha * M.trace() * Eigen::Matrix3d::Identity()) * A.transpose();
    set_node_matrix(P, p, flux);
  }
  return -face_divergence(P, g);
}

VectorField linear_operator_apply(LinearKind which, const VectorField& G, const Kinematics& frozen,
                                  const WeightField& wf, const Grid& g) {
  require_shape(G, g, "linear_operator_apply");
  return apply_linear(which, G, freeze_faces(frozen, wf, g), g);
}

VectorField linear_operator_apply_curl(const TensorField& H, const Kinematics& frozen, const WeightField& wf,
                                       const Grid& g) {
  require_shape(H, g, "linear_operator_apply_curl");
  double scale = 0.0, asym = 0.0;
  for (Index p = 0; p < H.rows(); ++p) {
    const Eigen::Matrix3d M = node_matrix(H, p);
    scale = std::max(scale, M.cwiseAbs().maxCoeff());
    asym = std::max(asym, (M + M.transpose()).cwiseAbs().maxCoeff());
  }
  if (asym > 1e-12 * std::max(scale, 1.0)) throw ContractViolation("L^c needs an antisymmetric H");
  const FrozenFaces ff = freeze_faces(frozen, wf, g);
  TensorField Hf(face_count(g), 9);
  for (int c = 0; c < 9; ++c) Hf.col(c) = face_average3(ScalarField(H.col(c)), g);
  TensorField P(face_count(g), 9);
  for (Index p = 0; p < P.rows(); ++p) {
    const double c = ff.weight(p);
    if (c == 0.0) {
      P.row(p).setZero();
      continue;
    }
    // P^k_i = c A^k_r H^r_i = c (A H)(k, i), stored at (i, k).
    const Eigen::Matrix3d AH = node_matrix(ff.A, p) * node_matrix(Hf, p);
    set_node_matrix(P, p, c * AH.transpose());
  }
  return -face_divergence(P, g);
}

}  // namespace pvac
