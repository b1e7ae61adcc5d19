#include "pvac/stencil.hpp"

#include <string>

namespace pvac {

namespace {

void partial_periodic(const double* in, double* out, Index stride, int n, Index outer_count, Index outer_stride,
                      Index inner_count, double h) {
  const double c = 1.0 / (12.0 * h);
  for (Index o = 0; o < outer_count; ++o) {
    for (Index q = 0; q < inner_count; ++q) {
      const double* u = in + o * outer_stride + q;
      double* d = out + o * outer_stride + q;
      for (int i = 0; i < n; ++i) {
        const int ip1 = (i + 1) % n, ip2 = (i + 2) % n;
        const int im1 = (i + n - 1) % n, im2 = (i + n - 2) % n;
        d[i * stride] = c * (8.0 * (u[ip1 * stride] - u[im1 * stride]) - (u[ip2 * stride] - u[im2 * stride]));
      }
    }
  }
}

}  // namespace

void partial_into(const double* in, double* out, const Grid& g, Axis a) {
  const Index n1 = g.n1, n2 = g.n2, n3 = g.n3;
  switch (a) {
    case Axis::X1:
      partial_periodic(in, out, 1, g.n1, n2 * n3, n1, 1, g.h1);
      break;
    case Axis::X2:
      partial_periodic(in, out, n1, g.n2, n3, n1 * n2, n1, g.h2);
      break;
    case Axis::X3: {
      const Index s = n1 * n2;
      const double c = 1.0 / (2.0 * g.h3);
#pragma omp parallel for if (n3 * s > 32768)
      for (Index q = 0; q < s; ++q) {
        const double* u = in + q;
        double* d = out + q;
        d[0] = c * (4.0 * (u[s] - u[0]) - (u[2 * s] - u[0]));
        for (Index k = 1; k < n3 - 1; ++k) d[k * s] = c * (u[(k + 1) * s] - u[(k - 1) * s]);
        const Index L = n3 - 1;
        d[L * s] = c * (4.0 * (u[L * s] - u[(L - 1) * s]) - (u[L * s] - u[(L - 2) * s]));
      }
      break;
    }
  }
}

ScalarField partial_n(const ScalarField& f, const Grid& g, Axis a, int times) {
  ScalarField cur = f;
  ScalarField next(f.size());
  for (int t = 0; t < times; ++t) {
    partial_into(cur.data(), next.data(), g, a);
    cur.swap(next);
  }
  return cur;
}

ScalarField mixed_partial(const ScalarField& f, const Grid& g, int m1, int m2, int n) {
  require_shape(f, g, "mixed_partial");
  ScalarField r = partial_n(f, g, Axis::X1, m1);
  r = partial_n(r, g, Axis::X2, m2);
  return partial_n(r, g, Axis::X3, n);
}

VectorField mixed_partial(const VectorField& f, const Grid& g, int m1, int m2, int n) {
  VectorField out(f.rows(), 3);
  for (int c = 0; c < 3; ++c) out.col(c) = mixed_partial(ScalarField(f.col(c)), g, m1, m2, n);
  return out;
}

VectorField gradient(const ScalarField& f, const Grid& g) {
  require_shape(f, g, "gradient");
  VectorField out(g.size(), 3);
  for (int k = 0; k < 3; ++k) partial_into(f.data(), out.col(k).data(), g, Axis(k));
  return out;
}

TensorField gradient(const VectorField& F, const Grid& g) {
  require_shape(F, g, "gradient");
  TensorField out(g.size(), 9);
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k) partial_into(F.col(i).data(), out.col(tcol(i, k)).data(), g, Axis(k));
  return out;
}

TensorField deformation_gradient(const VectorField& disp, const Grid& g, const Eigen::Matrix3d& base) {
  TensorField D = gradient(disp, g);
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k) D.col(tcol(i, k)) += base(i, k);
  return D;
}

ScalarField second_partial_tangential(const ScalarField& f, const Grid& g, Axis a) {
  require_shape(f, g, "second_partial_tangential");
  if (a == Axis::X3) throw ContractViolation("second_partial_tangential: x3 is not periodic");
  const Index n1 = g.n1, n2 = g.n2, n3 = g.n3;
  const int n = g.count(a);
  const Index stride = a == Axis::X1 ? 1 : n1;
  const double c = 1.0 / (12.0 * g.spacing(a) * g.spacing(a));
  ScalarField out(g.size());
  for (Index k = 0; k < n3; ++k)
    for (Index j = 0; j < n2; ++j)
      for (Index i = 0; i < n1; ++i) {
        const Index p = i + n1 * (j + n2 * k);
        const int pos = a == Axis::X1 ? int(i) : int(j);
        const Index base = p - pos * stride;
        auto at = [&](int off) { return f(base + Index((pos + off + 2 * n) % n) * stride); };
        const double u0 = f(p);
        out(p) = c * (16.0 * ((at(1) - u0) + (at(-1) - u0)) - ((at(2) - u0) + (at(-2) - u0)));
      }
  return out;
}

void require_resolution(const Grid& g, int tangential, int normal, const char* what) {
  // Periodic stencils may wrap around the torus any number of times; only the
  // bounded x3 direction limits the composed support.
  (void)tangential;
  const int wn = 2 * normal + 1;
  if (wn > g.n3)
    throw ResolutionError(std::string(what) + ": " + std::to_string(normal) + " composed x3 derivatives need " +
                          std::to_string(wn) + " rows, grid has " + std::to_string(g.n3));
}

ScalarField face_difference3(const ScalarField& u, const Grid& g) {
  require_shape(u, g, "face_difference3");
  const Index s = g.column_size();
  ScalarField F = ScalarField::Zero(face_count(g));
  const double inv = 1.0 / g.h3;
  for (int f = 1; f < g.n3; ++f)
    for (Index q = 0; q < s; ++q) F(f * s + q) = (u(f * s + q) - u((f - 1) * s + q)) * inv;
  return F;
}

ScalarField face_average3(const ScalarField& u, const Grid& g) {
  require_shape(u, g, "face_average3");
  const Index s = g.column_size();
  ScalarField F = ScalarField::Zero(face_count(g));
  for (int f = 1; f < g.n3; ++f)
    for (Index q = 0; q < s; ++q) F(f * s + q) = 0.5 * (u(f * s + q) + u((f - 1) * s + q));
  return F;
}

ScalarField face_divergence3(const ScalarField& F, const Grid& g) {
  if (F.size() != face_count(g)) throw ContractViolation("face_divergence3: face field has wrong size");
  const Index s = g.column_size();
  ScalarField out(g.size());
  const double inv = 1.0 / g.h3;
  for (int k = 0; k < g.n3; ++k)
    for (Index q = 0; q < s; ++q) out(k * s + q) = (F((k + 1) * s + q) - F(k * s + q)) * inv;
  return out;
}

ScalarField face_to_node3(const ScalarField& F, const Grid& g) {
  if (F.size() != face_count(g)) throw ContractViolation("face_to_node3: face field has wrong size");
  const Index s = g.column_size();
  ScalarField out(g.size());
  for (int k = 0; k < g.n3; ++k)
    for (Index q = 0; q < s; ++q) out(k * s + q) = 0.5 * (F((k + 1) * s + q) + F(k * s + q));
  return out;
}

}  // namespace pvac

namespace pvac {

TensorField face_gradient(const VectorField& F, const Grid& g) {
  require_shape(F, g, "face_gradient");
  TensorField out(face_count(g), 9);
  ScalarField d(g.size());
  for (int i = 0; i < 3; ++i) {
    const ScalarField Fi = F.col(i);
    for (int b = 0; b < 2; ++b) {
      partial_into(Fi.data(), d.data(), g, Axis(b));
      out.col(tcol(i, b)) = face_average3(d, g);
    }
    out.col(tcol(i, 2)) = face_difference3(Fi, g);
  }
  return out;
}

VectorField face_divergence(const TensorField& P, const Grid& g) {
  if (P.rows() != face_count(g)) throw ContractViolation("face_divergence: face field has wrong size");
  const Index s = g.column_size();
  const Index last = Index(g.n3) * s;
  VectorField out(g.size(), 3);
  ScalarField tmp(g.size());
  for (int i = 0; i < 3; ++i) {
    ScalarField c3 = P.col(tcol(i, 2));
    c3.head(s).setZero();
    c3.segment(last, s).setZero();
    ScalarField acc = face_divergence3(c3, g);
    for (int b = 0; b < 2; ++b) {
      ScalarField cb = P.col(tcol(i, b));
      cb.head(s).setZero();
      cb.segment(last, s).setZero();
      const ScalarField node = face_to_node3(cb, g);
      partial_into(node.data(), tmp.data(), g, Axis(b));
      acc += tmp;
    }
    out.col(i) = acc;
  }
  return out;
}

}  // namespace pvac
