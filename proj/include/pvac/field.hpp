#pragma once

#include <Eigen/Core>

#include "pvac/errors.hpp"
#include "pvac/grid.hpp"

namespace pvac {

// Nodal fields are Eigen arrays with one row per node (x1 fastest) and one
// column per component. Tensor component (i, k) lives in column 3*i + k and
// stands for dF^i/dx_k when the tensor is a gradient.
template <typename Scalar>
using ScalarFieldT = Eigen::Array<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using VectorFieldT = Eigen::Array<Scalar, Eigen::Dynamic, 3>;
template <typename Scalar>
using TensorFieldT = Eigen::Array<Scalar, Eigen::Dynamic, 9>;

using ScalarField = ScalarFieldT<double>;
using VectorField = VectorFieldT<double>;
using TensorField = TensorFieldT<double>;

constexpr int tcol(int i, int k) { return 3 * i + k; }

template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, 3, 3> node_matrix(const Eigen::ArrayBase<Derived>& T, Index p) {
  Eigen::Matrix<typename Derived::Scalar, 3, 3> M;
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k) M(i, k) = T(p, tcol(i, k));
  return M;
}

template <typename Derived, typename MatrixDerived>
void set_node_matrix(Eigen::ArrayBase<Derived>& T, Index p, const Eigen::MatrixBase<MatrixDerived>& M) {
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k) T(p, tcol(i, k)) = M(i, k);
}

template <typename Derived>
void require_shape(const Eigen::DenseBase<Derived>& f, const Grid& g, const char* what) {
  if (f.rows() != g.size())
    throw ContractViolation(std::string(what) + ": field has " + std::to_string(f.rows()) +
                            " nodes, grid has " + std::to_string(g.size()));
}

template <typename Derived>
bool all_finite(const Eigen::DenseBase<Derived>& f) {
  return f.derived().array().isFinite().all();
}

/// Midpoint-rule integral of a nodal scalar: sum of values times h1*h2*h3, in node order.
template <typename Derived>
double integrate(const Eigen::ArrayBase<Derived>& f, const Grid& g) {
  double s = 0.0;
  for (Index p = 0; p < f.rows(); ++p) s += f(p);
  return s * g.cell_volume();
}

/// Evaluates f(x1, x2, x3) at every node.
template <typename Fn>
ScalarField sample(const Grid& g, Fn&& f) {
  ScalarField out(g.size());
  for (int k = 0; k < g.n3; ++k)
    for (int j = 0; j < g.n2; ++j)
      for (int i = 0; i < g.n1; ++i) out(g.index(i, j, k)) = f(g.x1(i), g.x2(j), g.x3(k));
  return out;
}

/// Vector analogue of sample(); f returns something indexable by 0..2.
template <typename Fn>
VectorField sample_vector(const Grid& g, Fn&& f) {
  VectorField out(g.size(), 3);
  for (int k = 0; k < g.n3; ++k)
    for (int j = 0; j < g.n2; ++j)
      for (int i = 0; i < g.n1; ++i) {
        const auto v = f(g.x1(i), g.x2(j), g.x3(k));
        const Index p = g.index(i, j, k);
        for (int c = 0; c < 3; ++c) out(p, c) = v[c];
      }
  return out;
}

}  // namespace pvac
