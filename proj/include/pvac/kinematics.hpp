#pragma once

#include "pvac/field.hpp"

namespace pvac {

/// Per-node geometry of a flow map: D eta, its inverse A, J = det D eta and
/// the transposed cofactor a = J A.
struct Kinematics {
  TensorField Deta;
  TensorField A;
  ScalarField J;
  TensorField a;

  Index size() const { return J.size(); }
};

/// Inverse and determinant of one 3x3 matrix by the adjugate formula.
template <typename Scalar>
struct Inverse3 {
  Eigen::Matrix<Scalar, 3, 3> inverse;
  Eigen::Matrix<Scalar, 3, 3> adjugate;
  Scalar det;
};

template <typename Derived>
Inverse3<typename Derived::Scalar> invert3(const Eigen::MatrixBase<Derived>& M) {
  using S = typename Derived::Scalar;
  Inverse3<S> r;
  auto& C = r.adjugate;
  C(0, 0) = M(1, 1) * M(2, 2) - M(1, 2) * M(2, 1);
  C(0, 1) = M(0, 2) * M(2, 1) - M(0, 1) * M(2, 2);
  C(0, 2) = M(0, 1) * M(1, 2) - M(0, 2) * M(1, 1);
  C(1, 0) = M(1, 2) * M(2, 0) - M(1, 0) * M(2, 2);
  C(1, 1) = M(0, 0) * M(2, 2) - M(0, 2) * M(2, 0);
  C(1, 2) = M(0, 2) * M(1, 0) - M(0, 0) * M(1, 2);
  C(2, 0) = M(1, 0) * M(2, 1) - M(1, 1) * M(2, 0);
  C(2, 1) = M(0, 1) * M(2, 0) - M(0, 0) * M(2, 1);
  C(2, 2) = M(0, 0) * M(1, 1) - M(0, 1) * M(1, 0);
  r.det = M(0, 0) * C(0, 0) + M(0, 1) * C(1, 0) + M(0, 2) * C(2, 0);
  r.inverse = C / r.det;
  return r;
}

/// Builds A, J, a from a nodal deformation gradient.
/// Throws DegenerateMapError (worst node, its J) if any det <= 0.
Kinematics compute_kinematics(const TensorField& Deta);

/// Identity-map kinematics on g.
Kinematics identity_kinematics(const Grid& g);

/// sum_k d_k a^k_i, which vanishes identically for a smooth map.
VectorField piola_divergence(const Kinematics& kin, const Grid& g);

struct LieDerivatives {
  TensorField D;      ///< [D_eta F]^i_r = A^s_r F^i,_s   (column 3*i + r)
  ScalarField div;    ///< A^s_r F^r,_s
  VectorField curl;   ///< eps_ijk A^s_j F^k,_s
  TensorField Curl;   ///< A^s_j F^i,_s - A^s_i F^j,_s   (antisymmetric)
};

LieDerivatives lie_derivatives(const VectorField& F, const Kinematics& kin, const Grid& g);

/// Same, given the plain gradient DF (column 3*i + s = F^i,_s) and the inverse A.
LieDerivatives lie_derivatives_from_gradient(const TensorField& DF, const TensorField& A);

/// curl_eta only, from the plain gradient.
VectorField lagrangian_curl(const TensorField& DF, const TensorField& A);

struct KinematicRates {
  TensorField dA;  ///< -A Dv A
  ScalarField dJ;  ///< J tr(A Dv)
};

KinematicRates kinematic_rates(const Kinematics& kin, const TensorField& Dv);

/// max over nodes of max_{ik} |A^k_i - delta|.
double max_a_deviation(const Kinematics& kin, Index* where = nullptr);

}  // namespace pvac
