#include "se3loss/rotations.hpp"

#include <cmath>

namespace se3loss {

namespace {

constexpr double kTaylorAngle = 1e-4;     // truncation below 1e-18 at 4th order
constexpr double kNearPiMargin = 1e-3;    // antisymmetric-part log degrades past this
constexpr double kRotationTol = 1e-6;

// sin(x)/x with 4th-order series below the branch point.
double sinc(double x) {
  if (std::abs(x) < kTaylorAngle) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sin(x) / x;
}

// (1 - cos x)/x^2 with 4th-order series below the branch point.
double cosc(double x) {
  if (std::abs(x) < kTaylorAngle) {
    const double x2 = x * x;
    return 0.5 - x2 / 24.0 + x2 * x2 / 720.0;
  }
  return (1.0 - std::cos(x)) / (x * x);
}

}  // namespace

Mat3 skew(const Vec3& v) {
  Mat3 m;
  m << 0.0, -v.z(), v.y(), v.z(), 0.0, -v.x(), -v.y(), v.x(), 0.0;
  return m;
}

bool is_rotation(const Mat3& R, double tol) {
  const double ortho = (R.transpose() * R - Mat3::Identity()).cwiseAbs().maxCoeff();
  return ortho <= tol && std::abs(R.determinant() - 1.0) <= tol;
}

AxisAngle AxisAngle::canonical(const Vec3& rv) {
  const double theta = rv.norm();
  if (theta <= kPi) return AxisAngle(rv);
  double wrapped = std::fmod(theta, 2.0 * kPi);
  Vec3 axis = rv / theta;
  if (wrapped > kPi) {
    wrapped = 2.0 * kPi - wrapped;
    axis = -axis;
  }
  return AxisAngle(wrapped * axis);
}

Quat Quat::canonical(const Vec4& q) {
  const double n = q.norm();
  if (n < 1e-9) throw DegenerateQuat("quaternion norm below 1e-9");
  Vec4 u = q / n;
  bool flip = u[0] < 0.0;
  if (u[0] == 0.0) {
    for (int i = 1; i < 4; ++i) {
      if (u[i] != 0.0) {
        flip = u[i] < 0.0;
        break;
      }
    }
  }
  return Quat(flip ? Vec4(-u) : u);
}

RotMat exp_so3(const AxisAngle& r) {
  const double theta = r.angle();
  const Mat3 K = skew(r.r);
  return RotMat(Mat3::Identity() + sinc(theta) * K + cosc(theta) * (K * K));
}

AxisAngle log_so3(const RotMat& Rm) {
  const Mat3& R = Rm.R;
  if (!is_rotation(R, kRotationTol)) {
    throw NotARotation("matrix violates orthonormality or det +1 beyond 1e-6");
  }
  // Antisymmetric part carries sin(theta) * axis, trace carries cos(theta).
  const Vec3 w(0.5 * (R(2, 1) - R(1, 2)), 0.5 * (R(0, 2) - R(2, 0)),
               0.5 * (R(1, 0) - R(0, 1)));
  const double s = w.norm();
  const double c = std::min(1.0, std::max(-1.0, 0.5 * (R.trace() - 1.0)));
  const double theta = std::atan2(s, c);

  if (theta < kTaylorAngle) {
    const double t2 = theta * theta;
    return AxisAngle(w * (1.0 + t2 / 6.0 + 7.0 * t2 * t2 / 360.0));
  }
  if (theta > kPi - kNearPiMargin) {
    // Axis from the symmetric part, largest pivot first; the antisymmetric
    // part is too small to divide by here.
    const Mat3 S = 0.5 * (R + R.transpose());
    Vec3 k2;
    for (int i = 0; i < 3; ++i) k2[i] = std::max(0.0, (S(i, i) - c) / (1.0 - c));
    int pivot = 0;
    k2.maxCoeff(&pivot);
    Vec3 k = Vec3::Zero();
    k[pivot] = std::sqrt(k2[pivot]);
    for (int j = 0; j < 3; ++j) {
      if (j != pivot) k[j] = S(pivot, j) / ((1.0 - c) * k[pivot]);
    }
    k.normalize();
    if (s > 1e-12) {
      if (k.dot(w) < 0.0) k = -k;
    } else {
      // Angle pi exactly: +-k give the same rotation; pick the sign that
      // makes the first nonzero component positive.
      for (int i = 0; i < 3; ++i) {
        if (std::abs(k[i]) > 1e-12) {
          if (k[i] < 0.0) k = -k;
          break;
        }
      }
    }
    return AxisAngle(theta * k);
  }
  return AxisAngle(w * (theta / s));
}

Quat to_quat(const AxisAngle& r) {
  const double theta = r.angle();
  Vec4 q;
  q[0] = std::cos(0.5 * theta);
  q.tail<3>() = (0.5 * sinc(0.5 * theta)) * r.r;
  return Quat::canonical(q);
}

AxisAngle to_axis_angle(const Quat& q) {
  const Quat c = Quat::canonical(q.wxyz);
  const Vec3 v = c.vec();
  const double nv = v.norm();
  if (nv < 1e-9) return AxisAngle((2.0 / c.w()) * v);
  return AxisAngle(v * (2.0 * std::atan2(nv, c.w()) / nv));
}

RotMat to_rot_mat(const Quat& q) {
  const Quat c = Quat::canonical(q.wxyz);
  const double w = c.wxyz[0], x = c.wxyz[1], y = c.wxyz[2], z = c.wxyz[3];
  Mat3 R;
  R << 1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y),
      2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x),
      2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y);
  return RotMat(R);
}

Quat to_quat(const RotMat& Rm) {
  const Mat3& R = Rm.R;
  const double t = R.trace();
  Vec4 q;
  if (t > 0.0) {
    const double s = 2.0 * std::sqrt(t + 1.0);
    q << 0.25 * s, (R(2, 1) - R(1, 2)) / s, (R(0, 2) - R(2, 0)) / s,
        (R(1, 0) - R(0, 1)) / s;
  } else if (R(0, 0) > R(1, 1) && R(0, 0) > R(2, 2)) {
    const double s = 2.0 * std::sqrt(1.0 + R(0, 0) - R(1, 1) - R(2, 2));
    q << (R(2, 1) - R(1, 2)) / s, 0.25 * s, (R(0, 1) + R(1, 0)) / s,
        (R(0, 2) + R(2, 0)) / s;
  } else if (R(1, 1) > R(2, 2)) {
    const double s = 2.0 * std::sqrt(1.0 + R(1, 1) - R(0, 0) - R(2, 2));
    q << (R(0, 2) - R(2, 0)) / s, (R(0, 1) + R(1, 0)) / s, 0.25 * s,
        (R(1, 2) + R(2, 1)) / s;
  } else {
    const double s = 2.0 * std::sqrt(1.0 + R(2, 2) - R(0, 0) - R(1, 1));
    q << (R(1, 0) - R(0, 1)) / s, (R(0, 2) + R(2, 0)) / s,
        (R(1, 2) + R(2, 1)) / s, 0.25 * s;
  }
  return Quat::canonical(q);
}

EulerZYX to_euler_zyx(const RotMat& Rm) {
  const Mat3& R = Rm.R;
  EulerZYX e;
  const double sp = std::min(1.0, std::max(-1.0, -R(2, 0)));
  e.pitch = std::asin(sp);
  e.gimbal_lock = std::abs(e.pitch) > kPi / 2.0 - 1e-6;
  if (!e.gimbal_lock) {
    e.yaw = std::atan2(R(1, 0), R(0, 0));
    e.roll = std::atan2(R(2, 1), R(2, 2));
  } else {
    // Only yaw -+ roll is determined; put everything into yaw.
    e.roll = 0.0;
    e.yaw = std::atan2(-R(0, 1), R(1, 1));
  }
  return e;
}

RotMat to_rot_mat(const EulerZYX& e) {
  const double c1 = std::cos(e.yaw), s1 = std::sin(e.yaw);
  const double c2 = std::cos(e.pitch), s2 = std::sin(e.pitch);
  const double c3 = std::cos(e.roll), s3 = std::sin(e.roll);
  Mat3 R;
  R << c1 * c2, c1 * s2 * s3 - s1 * c3, c1 * s2 * c3 + s1 * s3,
      s1 * c2, s1 * s2 * s3 + c1 * c3, s1 * s2 * c3 - c1 * s3,
      -s2, c2 * s3, c2 * c3;
  return RotMat(R);
}

Quat to_quat(const EulerZYX& e) { return to_quat(to_rot_mat(e)); }
AxisAngle to_axis_angle(const RotMat& R) { return log_so3(R); }
AxisAngle to_axis_angle(const EulerZYX& e) { return log_so3(to_rot_mat(e)); }
RotMat to_rot_mat(const AxisAngle& r) { return exp_so3(r); }
EulerZYX to_euler_zyx(const AxisAngle& r) { return to_euler_zyx(exp_so3(r)); }
EulerZYX to_euler_zyx(const Quat& q) { return to_euler_zyx(to_rot_mat(q)); }

Mat3 so3_right_jacobian(const Vec3& r) {
  const double theta = r.norm();
  const Mat3 K = skew(r);
  double c2;
  if (theta < kTaylorAngle) {
    const double t2 = theta * theta;
    c2 = 1.0 / 6.0 - t2 / 120.0 + t2 * t2 / 5040.0;
  } else {
    c2 = (theta - std::sin(theta)) / (theta * theta * theta);
  }
  return Mat3::Identity() - cosc(theta) * K + c2 * (K * K);
}

Mat3 so3_right_jacobian_inverse(const Vec3& r) {
  const double theta = r.norm();
  const Mat3 K = skew(r);
  double d2;
  if (theta < kTaylorAngle) {
    const double t2 = theta * theta;
    d2 = 1.0 / 12.0 + t2 / 720.0 + t2 * t2 / 30240.0;
  } else {
    const double s = std::sin(theta);
    // The second term vanishes at theta = pi; 1/theta^2 is the exact limit.
    d2 = s < 1e-12 ? 1.0 / (theta * theta)
                   : 1.0 / (theta * theta) -
                         (1.0 + std::cos(theta)) / (2.0 * theta * s);
  }
  return Mat3::Identity() + 0.5 * K + d2 * (K * K);
}

}  // namespace se3loss
