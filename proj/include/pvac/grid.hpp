#pragma once

#include <array>
#include <cstdint>

#include <Eigen/Core>

namespace pvac {

using Index = Eigen::Index;

enum class Axis : int { X1 = 0, X2 = 1, X3 = 2 };

/// Collocated grid on T^2 x (0,1). Periodic in x1, x2 with nodes at i*h;
/// cell-centered in x3 with nodes at (k + 1/2)*h3, so no node sits on the
/// vacuum boundary {x3 = 0} or {x3 = 1}.
struct Grid {
  int n1 = 0, n2 = 0, n3 = 0;
  double h1 = 0, h2 = 0, h3 = 0;

  Grid() = default;
  Grid(int n1_, int n2_, int n3_);

  Index size() const { return Index(n1) * n2 * n3; }
  Index index(int i, int j, int k) const { return i + Index(n1) * (j + Index(n2) * k); }

  double x1(int i) const { return i * h1; }
  double x2(int j) const { return j * h2; }
  double x3(int k) const { return (k + 0.5) * h3; }
  /// Face between x3 rows k-1 and k, f = 0..n3; faces 0 and n3 lie on the boundary.
  double x3_face(int f) const { return f * h3; }

  double cell_volume() const { return h1 * h2 * h3; }
  int count(Axis a) const { return a == Axis::X1 ? n1 : a == Axis::X2 ? n2 : n3; }
  double spacing(Axis a) const { return a == Axis::X1 ? h1 : a == Axis::X2 ? h2 : h3; }
  Index column_size() const { return Index(n1) * n2; }

  std::array<int, 3> dims() const { return {n1, n2, n3}; }
  bool operator==(const Grid& o) const { return n1 == o.n1 && n2 == o.n2 && n3 == o.n3; }
};

}  // namespace pvac
