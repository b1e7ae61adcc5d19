#pragma once

#include "pvac/kinematics.hpp"
#include "pvac/weights.hpp"

namespace pvac {

enum class LinearKind { Elastic, Divergence, Curl };

/// Weighted second-order operators with frozen kinematics, in flux form on the
/// x3 faces (nodal A and J averaged to the faces, W the face weights):
///   [L^e G]^i = -(W J^(-1/alpha) A^k_r A^s_r G^i,_s),_k
///   [L^d G]^i = -(1/alpha) (W J^(-1/alpha) A^k_i A^s_r G^r,_s),_k
/// Each is -face_divergence(C face_gradient(G)); both are symmetric and
/// positive semidefinite in the unweighted nodal pairing.
VectorField linear_operator_apply(LinearKind which, const VectorField& G, const Kinematics& frozen,
                                  const WeightField& wf, const Grid& g);

/// [L^c H]^i = -(W J^(-1/alpha) A^k_r H^r_i),_k for antisymmetric H (column 3*r + i
/// holds H^r_i). Throws ContractViolation when H is not antisymmetric.
VectorField linear_operator_apply_curl(const TensorField& H, const Kinematics& frozen, const WeightField& wf,
                                       const Grid& g);

/// Frozen face coefficients reused across many applications.
struct FrozenFaces {
  TensorField A;       ///< face-averaged A
  ScalarField weight;  ///< W J^(-1/alpha) on the faces, zero on the boundary faces
  double inv_alpha = 1.0;
};

FrozenFaces freeze_faces(const Kinematics& frozen, const WeightField& wf, const Grid& g);

/// (L^e + L^d) G with precomputed faces.
VectorField apply_elastic_plus_divergence(const VectorField& G, const FrozenFaces& ff, const Grid& g);
VectorField apply_linear(LinearKind which, const VectorField& G, const FrozenFaces& ff, const Grid& g);

}  // namespace pvac
