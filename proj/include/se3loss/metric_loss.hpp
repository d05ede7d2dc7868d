#pragma once

#include "se3loss/poses.hpp"

namespace se3loss {

/// SPD inner product on the 6-dimensional tangent space. Immutable after
/// construction; construction validates symmetry (1e-12) and positive
/// definiteness (all eigenvalues > 1e-12) and throws NotSPD otherwise.
class MetricZ {
 public:
  MetricZ() : Z_(Mat6::Identity()) {}

  static MetricZ identity() { return MetricZ(); }
  static MetricZ from_matrix(const Mat6& Z);
  static MetricZ diagonal(const Vec6& w);

  const Mat6& matrix() const { return Z_; }
  bool is_identity() const { return Z_.isIdentity(0.0); }

 private:
  explicit MetricZ(const Mat6& Z) : Z_(Z) {}
  Mat6 Z_;
};

struct LossGrad {
  double loss{0.0};
  Tangent6 grad;  // d loss / d p_hat in the chart coordinates at p_hat
};

/// Per-coordinate comparison of the analytic gradient against central
/// finite differences of the loss. max_rel_error uses the scale-guarded
/// form |analytic - numeric|_inf / max(1, |numeric|_inf).
struct GradCheckReport {
  Vec6 analytic{Vec6::Zero()};
  Vec6 numeric{Vec6::Zero()};
  Vec6 deviation{Vec6::Zero()};
  double max_abs_deviation{0.0};
  double max_rel_error{0.0};
  double step{0.0};
};

/// loss(p, p_hat) = v_t' J' Z J v_t with v_t = riemannian_log(p_hat, p)
/// and J = left_jacobian(inverse(p_hat), p_hat); the squared Z-norm of the
/// residual transported to the identity. Throws CutLocus past pi - 1e-6.
double geodesic_loss(const Pose6& p, const Pose6& p_hat, const MetricZ& Z);

/// Loss plus its analytic gradient in the p_hat chart. For Z = c*I the
/// gradient equals -2c * J' * u0 (the transported-residual form); general
/// SPD Z picks up the derivative of the residual map itself.
LossGrad geodesic_grad(const Pose6& p, const Pose6& p_hat, const MetricZ& Z);

/// Central finite-difference validation of geodesic_grad at the given
/// step. step must lie in (1e-8, 1e-3); InputError otherwise.
GradCheckReport grad_check(const Pose6& p, const Pose6& p_hat,
                           const MetricZ& Z, double step);

}  // namespace se3loss
