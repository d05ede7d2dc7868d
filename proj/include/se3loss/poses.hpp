#pragma once

#include "se3loss/rotations.hpp"

namespace se3loss {

/// Rigid transform in the 6-vector chart (axis-angle rotation, raw
/// translation). Units of the translation follow the dataset (m or mm).
struct Pose6 {
  AxisAngle r;
  Vec3 t{Vec3::Zero()};

  Pose6() = default;
  Pose6(const AxisAngle& rot, const Vec3& trans) : r(rot), t(trans) {}
  Pose6(double rx, double ry, double rz, double tx, double ty, double tz)
      : r(rx, ry, rz), t(tx, ty, tz) {}

  Vec6 vec() const {
    Vec6 v;
    v << r.r, t;
    return v;
  }
  static Pose6 from_vec(const Vec6& v) {
    return Pose6(AxisAngle(Vec3(v.head<3>())), v.tail<3>());
  }
  static Pose6 identity() { return Pose6(); }
};

/// 4x4 homogeneous form: rotation block top-left, translation top-right,
/// bottom row (0,0,0,1).
struct HomogeneousMat {
  Mat4 X{Mat4::Identity()};
};

/// Tangent vector in chart coordinates together with the pose it lives at.
struct Tangent6 {
  Vec6 v{Vec6::Zero()};
  Pose6 base;
};

/// Differential of a left translation in chart coordinates, in the 2x2
/// block layout (dL^r/dr, dL^r/dt; dL^t/dr, dL^t/dt). The dL^r/dt block is
/// identically zero: the product's rotation ignores the input translation.
struct Jacobian6 {
  Mat6 J{Mat6::Identity()};

  Eigen::Block<Mat6, 3, 3> rot_rot() { return J.block<3, 3>(0, 0); }
  Eigen::Block<Mat6, 3, 3> rot_trans() { return J.block<3, 3>(0, 3); }
  Eigen::Block<Mat6, 3, 3> trans_rot() { return J.block<3, 3>(3, 0); }
  Eigen::Block<Mat6, 3, 3> trans_trans() { return J.block<3, 3>(3, 3); }
};

/// Margin below pi at which the relative-rotation logarithm is refused.
inline constexpr double kCutLocusMargin = 1e-6;

/// Central finite-difference step for chart Jacobians.
inline constexpr double kJacobianFdStep = 1e-6;

/// Group composition in the chart; equals the homogeneous-matrix product.
Pose6 compose(const Pose6& p1, const Pose6& p2);

/// Group inverse: (log(R'), -R't).
Pose6 inverse(const Pose6& p);

HomogeneousMat to_matrix(const Pose6& p);

/// Throws NotARotation (propagated from log_so3, or on a corrupt bottom row).
Pose6 from_matrix(const HomogeneousMat& X);

/// Riemannian logarithm at the identity of the canonical left-invariant
/// metric: in this chart it is the chart value itself.
Tangent6 log_identity(const Pose6& p);

/// Inverse of log_identity; the rotation part is wrapped into [0, pi].
Pose6 exp_identity(const Vec6& v);
Pose6 exp_identity(const Tangent6& v);

/// d/dq chart(p o q) evaluated at q = at. The rotation-rotation and
/// translation-rotation blocks come from central finite differences of the
/// chart composition; dL^t/dt = R(r_p) and dL^r/dt = 0 are closed-form.
/// Debug builds check the closed-form blocks against finite differences.
Jacobian6 left_jacobian(const Pose6& p, const Pose6& at);

/// Riemannian logarithm at `base` of the canonical left-invariant metric,
/// computed by transporting chart(base^-1 o p) from the identity with
/// [left_jacobian(inverse(base), base)]^-1. Throws CutLocus when the
/// relative rotation angle reaches pi - 1e-6.
Tangent6 riemannian_log(const Pose6& base, const Pose6& p);

/// Rotation angle of inverse(a) o b, in [0, pi].
double relative_rotation_angle(const Pose6& a, const Pose6& b);

}  // namespace se3loss
