#include "se3loss/baselines.hpp"

#include <Eigen/SVD>
#include <cmath>

#include "se3loss/errors.hpp"

namespace se3loss {

namespace {
constexpr double kCollinearTol = 1e-9;

void require_non_collinear(const Vec3& p1, const Vec3& p2, const Vec3& p3,
                           const char* what) {
  if ((p2 - p1).cross(p3 - p1).norm() < kCollinearTol) {
    throw CollinearAnchors(what);
  }
}
}  // namespace

Beta::Beta(double b) : value(b) {
  if (!(b > 0.0)) {
    throw InputError("beta must be positive");
  }
}

AnchorRefs AnchorRefs::scaled(double extent) {
  if (!(extent > 0.0) || !std::isfinite(extent)) {
    throw InputError("anchor extent must be positive and finite");
  }
  AnchorRefs refs;
  refs.r2 *= extent;
  refs.r3 *= extent;
  return refs;
}

PosenetResult posenet_loss(const PoseQT& truth, const Vec4& q_raw,
                           const Vec3& t_pred, const Beta& beta) {
  const double n = q_raw.norm();
  if (n < 1e-9) {
    throw DegenerateQuat("raw quaternion norm below 1e-9");
  }
  const Vec4 qn = q_raw / n;
  Vec4 qt = truth.q.wxyz;
  if (qn.dot(qt) < 0.0) {
    qt = -qt;  // double cover: compare on the prediction's hemisphere
  }
  const Vec4 dq = qn - qt;
  const Vec3 dt = t_pred - truth.t;

  PosenetResult out;
  out.loss = dt.squaredNorm() + beta.value * dq.squaredNorm();
  // d(q/||q||)/dq = (I - qn qn') / ||q||
  out.grad_q = (2.0 * beta.value / n) * (dq - qn * qn.dot(dq));
  out.grad_t = 2.0 * dt;
  return out;
}

AnchorPoints pose_to_anchors(const Pose6& p, const AnchorRefs& refs) {
  const Mat3 R = to_rot_mat(p.r).R;
  AnchorPoints a;
  a.a1 = R * refs.r1 + p.t;
  a.a2 = R * refs.r2 + p.t;
  a.a3 = R * refs.r3 + p.t;
  return a;
}

Pose6 anchors_to_pose(const AnchorPoints& a, const AnchorRefs& refs) {
  require_non_collinear(refs.r1, refs.r2, refs.r3,
                        "reference points are collinear");
  require_non_collinear(a.a1, a.a2, a.a3, "anchor points are collinear");

  const Vec3 c_ref = (refs.r1 + refs.r2 + refs.r3) / 3.0;
  const Vec3 c_a = (a.a1 + a.a2 + a.a3) / 3.0;

  Mat3 H = Mat3::Zero();
  H += (refs.r1 - c_ref) * (a.a1 - c_a).transpose();
  H += (refs.r2 - c_ref) * (a.a2 - c_a).transpose();
  H += (refs.r3 - c_ref) * (a.a3 - c_a).transpose();

  Eigen::JacobiSVD<Mat3> svd(H, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Mat3 U = svd.matrixU();
  const Mat3 V = svd.matrixV();
  const Vec3 sigma = svd.singularValues();

  const double d = (V * U.transpose()).determinant();
  if (d < 0.0 && sigma[2] > 1e-9 * sigma[0]) {
    // Centered triples span a plane, so sigma[2] vanishes and the sign fix
    // is free; a significantly nonzero sigma[2] with a negative
    // determinant means the best orthogonal map truly reflects.
    throw ReflectionDetected("optimal orthogonal map has determinant -1");
  }
  Mat3 D = Mat3::Identity();
  D(2, 2) = d < 0.0 ? -1.0 : 1.0;
  const Mat3 R = V * D * U.transpose();

  return Pose6(log_so3(RotMat{R}), c_a - R * c_ref);
}

AnchorLossResult anchor_loss(const AnchorPoints& truth,
                             const AnchorPoints& pred) {
  AnchorLossResult out;
  const Eigen::Matrix<double, 9, 1> diff = pred.stacked() - truth.stacked();
  out.loss = diff.squaredNorm();
  out.grad = 2.0 * diff;
  return out;
}

}  // namespace se3loss
