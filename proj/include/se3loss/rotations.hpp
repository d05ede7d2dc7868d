#pragma once

#include <Eigen/Dense>

#include "se3loss/errors.hpp"

namespace se3loss {

using Vec3 = Eigen::Vector3d;
using Vec4 = Eigen::Vector4d;
using Mat3 = Eigen::Matrix3d;
using Mat4 = Eigen::Matrix4d;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using Mat6 = Eigen::Matrix<double, 6, 6>;

inline constexpr double kPi = 3.14159265358979323846;

/// Rotation vector: direction = axis, norm = angle. Canonical form has
/// angle in [0, pi]; the zero vector is the identity.
struct AxisAngle {
  Vec3 r{Vec3::Zero()};

  AxisAngle() = default;
  explicit AxisAngle(const Vec3& rv) : r(rv) {}
  AxisAngle(double x, double y, double z) : r(x, y, z) {}

  double angle() const { return r.norm(); }

  /// Wraps the angle into [0, pi] (flipping the axis where needed).
  static AxisAngle canonical(const Vec3& rv);
};

struct RotMat {
  Mat3 R{Mat3::Identity()};

  RotMat() = default;
  explicit RotMat(const Mat3& m) : R(m) {}
};

/// Unit quaternion stored (w, x, y, z). Canonical form has w >= 0; a
/// w == 0 tie is resolved by making the first nonzero component positive.
struct Quat {
  Vec4 wxyz{1.0, 0.0, 0.0, 0.0};

  Quat() = default;
  explicit Quat(const Vec4& q) : wxyz(q) {}
  Quat(double w, double x, double y, double z) : wxyz(w, x, y, z) {}

  double w() const { return wxyz[0]; }
  Vec3 vec() const { return wxyz.tail<3>(); }

  /// Normalises and resolves the double cover. Throws DegenerateQuat if the
  /// norm is below 1e-9.
  static Quat canonical(const Vec4& q);
};

/// Intrinsic Z-Y'-X'' angles (yaw, pitch, roll), radians. pitch is confined
/// to [-pi/2, pi/2]; gimbal_lock is set when |pitch| > pi/2 - 1e-6, in which
/// case only the rotation (not the triple) survives round-trips.
struct EulerZYX {
  double yaw = 0.0;
  double pitch = 0.0;
  double roll = 0.0;
  bool gimbal_lock = false;
};

Mat3 skew(const Vec3& v);

/// True when R'R = I and det R = +1 within tol.
bool is_rotation(const Mat3& R, double tol);

/// Rodrigues map. Total on finite input; uses a 4th-order Taylor branch
/// below angle 1e-4.
RotMat exp_so3(const AxisAngle& r);

/// Inverse of exp_so3, with output angle in [0, pi]. Throws NotARotation if
/// the input violates rotation invariants beyond 1e-6. The near-pi branch
/// recovers the axis from the symmetric part with largest-pivot selection.
AxisAngle log_so3(const RotMat& R);

Quat to_quat(const AxisAngle& r);
Quat to_quat(const RotMat& R);
Quat to_quat(const EulerZYX& e);
AxisAngle to_axis_angle(const Quat& q);
AxisAngle to_axis_angle(const RotMat& R);
AxisAngle to_axis_angle(const EulerZYX& e);
RotMat to_rot_mat(const Quat& q);
RotMat to_rot_mat(const AxisAngle& r);
RotMat to_rot_mat(const EulerZYX& e);
EulerZYX to_euler_zyx(const RotMat& R);
EulerZYX to_euler_zyx(const AxisAngle& r);
EulerZYX to_euler_zyx(const Quat& q);

/// Right Jacobian of the exponential map on SO(3):
/// exp(r + d) = exp(r) exp(Jr(r) d) to first order.
Mat3 so3_right_jacobian(const Vec3& r);

/// Inverse of so3_right_jacobian; valid for angles below pi.
Mat3 so3_right_jacobian_inverse(const Vec3& r);

}  // namespace se3loss
