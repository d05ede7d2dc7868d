#include "se3loss/align.hpp"

#include "se3loss/errors.hpp"

namespace se3loss {

void TrainConfig::validate() const {
  if (!(lr > 0.0)) throw InputError("learning rate must be positive");
  if (max_iter < 0) throw InputError("max iterations must be nonnegative");
  if (!(threshold > 0.0)) throw InputError("threshold must be positive");
}

AlignTrace align(const Pose6& init, const Pose6& target, const MetricZ& Z,
                 const TrainConfig& cfg) {
  cfg.validate();

  AlignTrace trace;
  Pose6 p_hat = init;
  double lr = cfg.lr;
  double loss = geodesic_loss(target, p_hat, Z);
  trace.steps.push_back({0, loss, p_hat});
  trace.converged = loss < cfg.threshold;

  for (int iter = 1; iter <= cfg.max_iter && !trace.converged; ++iter) {
    const LossGrad lg = geodesic_grad(target, p_hat, Z);
    // Transport the chart gradient to the identity tangent so the group
    // update stays on the manifold.
    const Mat6 J = left_jacobian(inverse(p_hat), p_hat).J;
    const Vec6 dir = J * lg.grad.v;

    Pose6 candidate;
    double cand_loss;
    for (;;) {
      candidate = compose(p_hat, exp_identity(Vec6(-lr * dir)));
      cand_loss = geodesic_loss(target, candidate, Z);
      if (cand_loss < loss) break;
      if (++trace.halvings > 60) {
        throw Diverged("no descent after 60 step halvings");
      }
      lr *= 0.5;
    }
    p_hat = candidate;
    loss = cand_loss;
    trace.steps.push_back({iter, loss, p_hat});
    trace.converged = loss < cfg.threshold;
  }
  return trace;
}

}  // namespace se3loss
