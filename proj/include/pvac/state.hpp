#pragma once

#include "pvac/kinematics.hpp"
#include "pvac/stencil.hpp"

namespace pvac {

/// eta = base * x + disp with disp periodic in x1, x2; v = d eta / dt.
struct FlowState {
  VectorField disp;
  VectorField v;
  double t = 0.0;
  Eigen::Matrix3d base = Eigen::Matrix3d::Identity();

  static FlowState identity(const Grid& g) {
    return {VectorField::Zero(g.size(), 3), VectorField::Zero(g.size(), 3), 0.0, Eigen::Matrix3d::Identity()};
  }
};

inline Kinematics kinematics_of(const FlowState& s, const Grid& g) {
  return compute_kinematics(deformation_gradient(s.disp, g, s.base));
}

/// Nodal positions eta(x).
VectorField positions(const FlowState& s, const Grid& g);

}  // namespace pvac
