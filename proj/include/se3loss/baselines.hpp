#pragma once

#include "se3loss/poses.hpp"

namespace se3loss {

/// Quaternion-plus-translation parameterisation used by the beta-weighted
/// L2 baseline.
struct PoseQT {
  Quat q;
  Vec3 t{Vec3::Zero()};
};

/// Weight on the rotation term of posenet_loss. The indoor tuning range is
/// 120-750; 500 is the default used when nothing is specified.
struct Beta {
  double value{500.0};

  Beta() = default;
  explicit Beta(double b);
};

/// Images of the three reference points under a pose.
struct AnchorPoints {
  Vec3 a1{Vec3::Zero()};
  Vec3 a2{Vec3::Zero()};
  Vec3 a3{Vec3::Zero()};

  Eigen::Matrix<double, 9, 1> stacked() const {
    Eigen::Matrix<double, 9, 1> v;
    v << a1, a2, a3;
    return v;
  }
};

/// Fixed reference triple; the default spans the z = 0 plane with unit
/// extent.
struct AnchorRefs {
  Vec3 r1{0.0, 0.0, 0.0};
  Vec3 r2{1.0, 0.0, 0.0};
  Vec3 r3{0.0, 1.0, 0.0};

  static AnchorRefs scaled(double extent);
};

struct PosenetResult {
  double loss{0.0};
  Vec4 grad_q{Vec4::Zero()};  // d loss / d q_raw (w, x, y, z)
  Vec3 grad_t{Vec3::Zero()};

  Eigen::Matrix<double, 7, 1> grad() const {
    Eigen::Matrix<double, 7, 1> g;
    g << grad_q, grad_t;
    return g;
  }
};

struct AnchorLossResult {
  double loss{0.0};
  Eigen::Matrix<double, 9, 1> grad{Eigen::Matrix<double, 9, 1>::Zero()};
};

/// ||t_pred - t_true||^2 + beta * ||q_raw/||q_raw|| - q_true||^2, with
/// q_true flipped onto the prediction's hemisphere before differencing.
/// The gradient is analytic through the normalisation. Throws
/// DegenerateQuat when ||q_raw|| < 1e-9.
PosenetResult posenet_loss(const PoseQT& truth, const Vec4& q_raw,
                           const Vec3& t_pred, const Beta& beta);

/// Applies the pose to each reference point.
AnchorPoints pose_to_anchors(const Pose6& p, const AnchorRefs& refs);

/// Recovers the rigid transform mapping refs onto the anchors by
/// three-point orthogonal Procrustes (cross-covariance SVD with
/// determinant-sign correction). Throws CollinearAnchors when either
/// triple is collinear, ReflectionDetected when the optimal orthogonal
/// map is a genuine reflection.
Pose6 anchors_to_pose(const AnchorPoints& a, const AnchorRefs& refs);

/// Independent L2 regression of the three points: sum of squared
/// point-wise distances, gradient with respect to the predicted anchors.
AnchorLossResult anchor_loss(const AnchorPoints& truth,
                             const AnchorPoints& pred);

}  // namespace se3loss
