#pragma once

#include <vector>

#include "se3loss/dataset.hpp"
#include "se3loss/metric_loss.hpp"

namespace se3loss {

/// Identity-chart logarithms of the prediction errors inverse(truth) o pred,
/// one 6-vector per pair.
struct ResidualSet {
  std::vector<Vec6> X;
};

struct WeightVector {
  Vec6 w{Vec6::Ones()};
};

/// X_i = log_identity(inverse(truth_i) o pred_i). Throws CutLocus naming the
/// offending record when a relative rotation reaches pi - 1e-6.
ResidualSet residuals(const PosePairSet& pairs);

/// w = diag(cov(X)^-1) with the unbiased (N-1) sample covariance;
/// mean-centred unless center = false. Needs at least 7 samples and a
/// covariance condition number below 1e12; SingularCovariance otherwise.
WeightVector compute_weights(const ResidualSet& X, bool center = true);

/// Z = diag(w). Throws NonPositiveWeight on any w_i <= 0.
MetricZ weights_to_metric(const WeightVector& w);

}  // namespace se3loss
