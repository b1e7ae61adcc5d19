#include "pvac/kinematics.hpp"

#include <cmath>
#include <limits>

#include "pvac/stencil.hpp"

namespace pvac {

Kinematics compute_kinematics(const TensorField& Deta) {
  const Index n = Deta.rows();
  Kinematics kin;
  kin.Deta = Deta;
  kin.A.resize(n, 9);
  kin.a.resize(n, 9);
  kin.J.resize(n);
  Index worst = -1;
  double worst_J = std::numeric_limits<double>::infinity();
  for (Index p = 0; p < n; ++p) {
    const auto inv = invert3(node_matrix(Deta, p));
    kin.J(p) = inv.det;
    if (!(inv.det > 0.0) && !(inv.det >= worst_J)) {
      worst_J = inv.det;
      worst = p;
    }
    set_node_matrix(kin.A, p, inv.inverse);
    set_node_matrix(kin.a, p, inv.det * inv.inverse);
  }
  if (worst >= 0) throw DegenerateMapError(worst, worst_J);
  return kin;
}

Kinematics identity_kinematics(const Grid& g) {
  TensorField D = TensorField::Zero(g.size(), 9);
  for (int i = 0; i < 3; ++i) D.col(tcol(i, i)).setOnes();
  return compute_kinematics(D);
}

VectorField piola_divergence(const Kinematics& kin, const Grid& g) {
  require_shape(kin.J, g, "piola_divergence");
  VectorField out = VectorField::Zero(g.size(), 3);
  ScalarField tmp(g.size());
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k) {
      // a^k_i is row k, column i of the cofactor-transpose matrix a = J A.
      partial_into(kin.a.col(tcol(k, i)).data(), tmp.data(), g, Axis(k));
      out.col(i) += tmp;
    }
  return out;
}

LieDerivatives lie_derivatives_from_gradient(const TensorField& DF, const TensorField& A) {
  const Index n = DF.rows();
  LieDerivatives L;
  L.D.resize(n, 9);
  L.div.resize(n);
  L.curl.resize(n, 3);
  L.Curl.resize(n, 9);
  for (Index p = 0; p < n; ++p) {
    const Eigen::Matrix3d M = node_matrix(DF, p) * node_matrix(A, p);
    set_node_matrix(L.D, p, M);
    L.div(p) = M.trace();
    L.curl(p, 0) = M(2, 1) - M(1, 2);
    L.curl(p, 1) = M(0, 2) - M(2, 0);
    L.curl(p, 2) = M(1, 0) - M(0, 1);
    set_node_matrix(L.Curl, p, M - M.transpose());
  }
  return L;
}

VectorField lagrangian_curl(const TensorField& DF, const TensorField& A) {
  const Index n = DF.rows();
  VectorField c(n, 3);
  for (Index p = 0; p < n; ++p) {
    const Eigen::Matrix3d M = node_matrix(DF, p) * node_matrix(A, p);
    c(p, 0) = M(2, 1) - M(1, 2);
    c(p, 1) = M(0, 2) - M(2, 0);
    c(p, 2) = M(1, 0) - M(0, 1);
  }
  return c;
}

LieDerivatives lie_derivatives(const VectorField& F, const Kinematics& kin, const Grid& g) {
  require_shape(F, g, "lie_derivatives");
  require_shape(kin.A, g, "lie_derivatives");
  return lie_derivatives_from_gradient(gradient(F, g), kin.A);
}

KinematicRates kinematic_rates(const Kinematics& kin, const TensorField& Dv) {
  if (Dv.rows() != kin.size()) throw ContractViolation("kinematic_rates: Dv and kinematics differ in size");
  const Index n = kin.size();
  KinematicRates r;
  r.dA.resize(n, 9);
  r.dJ.resize(n);
  for (Index p = 0; p < n; ++p) {
    const Eigen::Matrix3d A = node_matrix(kin.A, p);
    const Eigen::Matrix3d G = node_matrix(Dv, p);
    set_node_matrix(r.dA, p, -A * G * A);
    r.dJ(p) = kin.J(p) * (A * G).trace();
  }
  return r;
}

double max_a_deviation(const Kinematics& kin, Index* where) {
  double worst = 0.0;
  Index at = 0;
  for (Index p = 0; p < kin.size(); ++p) {
    const double d = (node_matrix(kin.A, p) - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff();
    if (d > worst) {
      worst = d;
      at = p;
    }
  }
  if (where) *where = at;
  return worst;
}

}  // namespace pvac
