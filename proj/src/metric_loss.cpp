#include "se3loss/metric_loss.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "se3loss/errors.hpp"

namespace se3loss {

namespace {
constexpr double kSymTol = 1e-12;
constexpr double kMinEigenvalue = 1e-12;
}  // namespace

MetricZ MetricZ::from_matrix(const Mat6& Z) {
  const double scale = std::max(1.0, Z.cwiseAbs().maxCoeff());
  if ((Z - Z.transpose()).cwiseAbs().maxCoeff() > kSymTol * scale) {
    throw NotSPD("metric matrix is not symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Mat6> es(Z, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success ||
      es.eigenvalues().minCoeff() <= kMinEigenvalue) {
    throw NotSPD("metric matrix is not positive definite");
  }
  return MetricZ(Z);
}

MetricZ MetricZ::diagonal(const Vec6& w) {
  if (!(w.minCoeff() > kMinEigenvalue)) {
    throw NotSPD("diagonal metric requires strictly positive entries");
  }
  return MetricZ(Mat6(w.asDiagonal()));
}

namespace {

struct LossParts {
  Vec6 u0;   // chart of inverse(p_hat) o p
  Mat6 J;    // left_jacobian(inverse(p_hat), p_hat)
  Vec6 Jvt;  // J * v_t, numerically equal to u0
  double loss;
};

LossParts loss_parts(const Pose6& p, const Pose6& p_hat, const MetricZ& Z) {
  LossParts out;
  const Pose6 rel = compose(inverse(p_hat), p);
  if (rel.r.angle() >= kPi - kCutLocusMargin) {
    throw CutLocus("relative rotation angle too close to pi");
  }
  out.u0 = rel.vec();
  out.J = left_jacobian(inverse(p_hat), p_hat).J;
  const Vec6 vt = out.J.partialPivLu().solve(out.u0);
  out.Jvt = out.J * vt;
  out.loss = out.Jvt.dot(Z.matrix() * out.Jvt);
  return out;
}

}  // namespace

double geodesic_loss(const Pose6& p, const Pose6& p_hat, const MetricZ& Z) {
  return loss_parts(p, p_hat, Z).loss;
}

LossGrad geodesic_grad(const Pose6& p, const Pose6& p_hat, const MetricZ& Z) {
  const LossParts parts = loss_parts(p, p_hat, Z);

  // d/dc chart(c^-1 o x) at c = e, x fixed with chart u0 = (r_u, t_u):
  //   rotation rows:    (-J_l^-1(r_u), 0)
  //   translation rows: (skew(t_u),   -I)
  // Transposed below, using J_l^-1(r)' = J_r^-1(r).
  const Vec3 r_u = parts.u0.head<3>();
  const Vec3 t_u = parts.u0.tail<3>();
  Mat6 D1t = Mat6::Zero();
  D1t.block<3, 3>(0, 0) = -so3_right_jacobian_inverse(r_u);
  D1t.block<3, 3>(0, 3) = -skew(t_u);
  D1t.block<3, 3>(3, 3) = -Mat3::Identity();

  // Chain rule through p_hat -> chart(p_hat^-1 o p): the inner differential
  // of p_hat in its own chart is J, the outer one is D1.
  LossGrad out;
  out.loss = parts.loss;
  out.grad.v = 2.0 * (parts.J.transpose() * (D1t * (Z.matrix() * parts.Jvt)));
  out.grad.base = p_hat;
  return out;
}

GradCheckReport grad_check(const Pose6& p, const Pose6& p_hat,
                           const MetricZ& Z, double step) {
  if (!(step > 1e-8 && step < 1e-3)) {
    throw InputError("grad_check step must lie in (1e-8, 1e-3)");
  }
  GradCheckReport rep;
  rep.step = step;
  rep.analytic = geodesic_grad(p, p_hat, Z).grad.v;

  const Vec6 c0 = p_hat.vec();
  for (int i = 0; i < 6; ++i) {
    Vec6 cp = c0, cm = c0;
    cp[i] += step;
    cm[i] -= step;
    const double fp = geodesic_loss(p, Pose6::from_vec(cp), Z);
    const double fm = geodesic_loss(p, Pose6::from_vec(cm), Z);
    rep.numeric[i] = (fp - fm) / (2.0 * step);
  }

  rep.deviation = rep.analytic - rep.numeric;
  rep.max_abs_deviation = rep.deviation.cwiseAbs().maxCoeff();
  rep.max_rel_error =
      rep.max_abs_deviation / std::max(1.0, rep.numeric.cwiseAbs().maxCoeff());
  return rep;
}

}  // namespace se3loss
