#pragma once

#include "pvac/field.hpp"

namespace pvac {

// Discrete first derivatives:
//  - x1, x2: 4th-order central on the periodic torus;
//  - x3: 2nd-order central in the interior, 2nd-order one-sided on the row
//    nearest each boundary.
// All stencils are written in difference form so constants differentiate to
// exactly zero.

void partial_into(const double* in, double* out, const Grid& g, Axis a);

inline ScalarField partial(const ScalarField& f, const Grid& g, Axis a) {
  require_shape(f, g, "partial");
  ScalarField out(g.size());
  partial_into(f.data(), out.data(), g, a);
  return out;
}

template <typename Derived>
ScalarField partial(const Eigen::ArrayBase<Derived>& f, const Grid& g, Axis a) {
  const ScalarField tmp = f;
  return partial(tmp, g, a);
}

/// Applies partial() `times` times along one axis.
ScalarField partial_n(const ScalarField& f, const Grid& g, Axis a, int times);

/// d1^m1 d2^m2 d3^n, composed left to right (x1 first, then x2, then x3).
ScalarField mixed_partial(const ScalarField& f, const Grid& g, int m1, int m2, int n);
VectorField mixed_partial(const VectorField& f, const Grid& g, int m1, int m2, int n);

VectorField gradient(const ScalarField& f, const Grid& g);
/// Column 3*i + k holds dF^i/dx_k.
TensorField gradient(const VectorField& F, const Grid& g);

/// Gradient of a flow map eta = base * x + disp, with disp periodic in x1, x2.
TensorField deformation_gradient(const VectorField& disp, const Grid& g,
                                 const Eigen::Matrix3d& base = Eigen::Matrix3d::Identity());

/// Compact 4th-order second derivative in a periodic direction (x1 or x2).
ScalarField second_partial_tangential(const ScalarField& f, const Grid& g, Axis a);

/// Throws ResolutionError when a `normal`-fold composed x3 stencil (2 normal + 1
/// rows) does not fit in the slab. Tangential compositions always fit on the torus.
void require_resolution(const Grid& g, int tangential, int normal, const char* what);

// ---------------------------------------------------------------------------
// Staggered x3 faces. Face f (0..n3) sits at x3 = f*h3 between rows f-1 and f;
// storage index i + n1*(j + n2*f). Faces 0 and n3 lie on the vacuum boundary.

inline Index face_count(const Grid& g) { return g.column_size() * (g.n3 + 1); }
inline Index face_index(const Grid& g, int i, int j, int f) { return i + Index(g.n1) * (j + Index(g.n2) * f); }

/// (u_k - u_{k-1}) / h3 on interior faces; zero on the two boundary faces.
ScalarField face_difference3(const ScalarField& u, const Grid& g);
/// (u_k + u_{k-1}) / 2 on interior faces; zero on the two boundary faces.
ScalarField face_average3(const ScalarField& u, const Grid& g);
/// Node k <- (F_{k+1} - F_k) / h3.
ScalarField face_divergence3(const ScalarField& F, const Grid& g);
/// Node k <- (F_{k+1} + F_k) / 2.
ScalarField face_to_node3(const ScalarField& F, const Grid& g);

/// Gradient of a nodal vector field sampled on the x3 faces: the x3 column is
/// the face difference, the tangential columns average the two adjacent nodal
/// derivatives. Boundary faces are zero. Column layout as gradient().
TensorField face_gradient(const VectorField& F, const Grid& g);

/// Negative adjoint of face_gradient: out_i = delta3 P^3_i + sum_beta d_beta avg(P^beta_i),
/// with P (column 3*i + k) given on faces and boundary faces ignored. For
/// every nodal F: sum_faces <face_gradient(F), P> = -sum_nodes <F, face_divergence(P)>.
VectorField face_divergence(const TensorField& P, const Grid& g);

}  // namespace pvac
