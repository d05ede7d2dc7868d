#pragma once

#include <vector>

#include "se3loss/align.hpp"
#include "se3loss/baselines.hpp"
#include "se3loss/metric_loss.hpp"

namespace se3loss {

enum class LossKind { geodesic, posenet, anchors };

const char* loss_kind_name(LossKind k);

struct TrainResult {
  double initial_gd{0.0};  // mean validation geodesic distance at step 0
  double final_gd{0.0};
  std::vector<double> gd_trace;  // per evaluation point, starting at step 0
  int eval_every{0};
  int steps{0};
};

/// Synthetic regression demo: inputs are pose charts with added Gaussian
/// noise (sigma = noise_sigma), targets the poses themselves; a
/// 6 -> 64(tanh) -> D regressor is trained by minibatch SGD under the
/// chosen loss, with D and the output decoding fixed by the
/// parameterisation (6-chart / quaternion+translation / 9 anchors).
/// Reports mean validation geodesic distance under Z = I. Deterministic
/// for a fixed cfg.seed; throws Diverged if the loss leaves the finite
/// range.
TrainResult train_demo(const TrainConfig& cfg, LossKind kind,
                       double noise_sigma = 0.05);

}  // namespace se3loss
