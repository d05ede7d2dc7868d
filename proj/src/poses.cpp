#include "se3loss/poses.hpp"

#include <cassert>
#include <cmath>

#include "se3loss/errors.hpp"

namespace se3loss {

Pose6 compose(const Pose6& p1, const Pose6& p2) {
  const Mat3 R1 = to_rot_mat(p1.r).R;
  const Mat3 R2 = to_rot_mat(p2.r).R;
  return Pose6(log_so3(RotMat{R1 * R2}), R1 * p2.t + p1.t);
}

Pose6 inverse(const Pose6& p) {
  const Mat3 R = to_rot_mat(p.r).R;
  return Pose6(log_so3(RotMat{R.transpose()}), -(R.transpose() * p.t));
}

HomogeneousMat to_matrix(const Pose6& p) {
  HomogeneousMat out;
  out.X.setIdentity();
  out.X.block<3, 3>(0, 0) = to_rot_mat(p.r).R;
  out.X.block<3, 1>(0, 3) = p.t;
  return out;
}

Pose6 from_matrix(const HomogeneousMat& X) {
  if ((X.X.row(3) - Eigen::RowVector4d(0, 0, 0, 1)).cwiseAbs().maxCoeff() >
      1e-9) {
    throw NotARotation("homogeneous matrix bottom row is not (0,0,0,1)");
  }
  RotMat R{X.X.block<3, 3>(0, 0)};
  return Pose6(log_so3(R), X.X.block<3, 1>(0, 3));
}

Tangent6 log_identity(const Pose6& p) {
  Tangent6 out;
  out.v = p.vec();
  out.base = Pose6::identity();
  return out;
}

Pose6 exp_identity(const Vec6& v) {
  return Pose6(AxisAngle::canonical(v.head<3>()), v.tail<3>());
}

Pose6 exp_identity(const Tangent6& v) { return exp_identity(v.v); }

namespace {

// Chart composition p o q as a raw 6-vector function of q's chart vector,
// used by the finite-difference columns below.
Vec6 compose_chart(const Pose6& p, const Vec6& q) {
  return compose(p, Pose6::from_vec(q)).vec();
}

}  // namespace

Jacobian6 left_jacobian(const Pose6& p, const Pose6& at) {
  Jacobian6 out;
  out.J.setZero();

  const Vec6 q0 = at.vec();
  const double h = kJacobianFdStep;

  // Rotation columns: both the rotation-rotation and translation-rotation
  // blocks are taken from central differences of the chart composition.
  for (int j = 0; j < 3; ++j) {
    Vec6 qp = q0, qm = q0;
    qp[j] += h;
    qm[j] -= h;
    out.J.col(j) = (compose_chart(p, qp) - compose_chart(p, qm)) / (2.0 * h);
  }

  // Translation columns in closed form: the product's rotation ignores t_q
  // and its translation is R(r_p) * t_q + t_p.
  const Mat3 Rp = to_rot_mat(p.r).R;
  out.J.block<3, 3>(3, 3) = Rp;

#ifndef NDEBUG
  for (int j = 3; j < 6; ++j) {
    Vec6 qp = q0, qm = q0;
    qp[j] += h;
    qm[j] -= h;
    const Vec6 fd = (compose_chart(p, qp) - compose_chart(p, qm)) / (2.0 * h);
    assert((fd - out.J.col(j)).cwiseAbs().maxCoeff() < 1e-5 &&
           "translation columns disagree with finite differences");
  }
#endif

  return out;
}

double relative_rotation_angle(const Pose6& a, const Pose6& b) {
  return compose(inverse(a), b).r.angle();
}

Tangent6 riemannian_log(const Pose6& base, const Pose6& p) {
  const Pose6 rel = compose(inverse(base), p);
  if (rel.r.angle() >= kPi - kCutLocusMargin) {
    throw CutLocus("relative rotation angle too close to pi");
  }
  const Vec6 u0 = log_identity(rel).v;
  const Mat6 J = left_jacobian(inverse(base), base).J;
  Tangent6 out;
  out.v = J.partialPivLu().solve(u0);
  out.base = base;
  return out;
}

}  // namespace se3loss
