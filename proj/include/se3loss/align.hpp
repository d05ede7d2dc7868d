#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "se3loss/metric_loss.hpp"

namespace se3loss {

enum class ZSource { identity, file, adaptive };

struct TrainConfig {
  double lr{0.1};
  int max_iter{10000};
  double threshold{1e-14};  // stop once loss falls below this
  std::uint64_t seed{42};
  ZSource z_source{ZSource::identity};
  std::string z_path;  // metric or pairs file backing z_source

  void validate() const;
};

struct AlignStep {
  int iteration{0};
  double loss{0.0};
  Pose6 pose;
};

struct AlignTrace {
  std::vector<AlignStep> steps;  // steps[0] is the initial state
  bool converged{false};
  int halvings{0};

  const AlignStep& final_step() const { return steps.back(); }
};

/// Riemannian gradient descent of geodesic_loss(target, .) from init:
/// p_hat <- p_hat o exp_identity(-lr * DL(p_hat^-1) grad). The recorded
/// loss is strictly decreasing; a step that fails to decrease halves lr,
/// and 60 halvings throw Diverged.
AlignTrace align(const Pose6& init, const Pose6& target, const MetricZ& Z,
                 const TrainConfig& cfg);

}  // namespace se3loss
