#include "se3loss/adaptive_weights.hpp"

#include <Eigen/Eigenvalues>
#include <string>

#include "se3loss/errors.hpp"

namespace se3loss {

ResidualSet residuals(const PosePairSet& pairs) {
  ResidualSet out;
  out.X.reserve(pairs.records.size());
  for (size_t i = 0; i < pairs.records.size(); ++i) {
    const PosePair& rec = pairs.records[i];
    const Pose6 rel = compose(inverse(rec.truth), rec.pred);
    if (rel.r.angle() >= kPi - kCutLocusMargin) {
      throw CutLocus("pair '" + rec.id + "' (index " + std::to_string(i) +
                     ") has relative rotation at the cut locus");
    }
    out.X.push_back(log_identity(rel).v);
  }
  return out;
}

WeightVector compute_weights(const ResidualSet& X, bool center) {
  const size_t n = X.X.size();
  if (n < 7) {
    throw SingularCovariance(
        "need at least 7 residuals for a well-posed 6x6 covariance, got " +
        std::to_string(n));
  }
  Vec6 mean = Vec6::Zero();
  if (center) {
    for (const Vec6& x : X.X) mean += x;
    mean /= static_cast<double>(n);
  }
  Mat6 cov = Mat6::Zero();
  for (const Vec6& x : X.X) {
    const Vec6 d = x - mean;
    cov += d * d.transpose();
  }
  cov /= static_cast<double>(n - 1);

  Eigen::SelfAdjointEigenSolver<Mat6> es(cov, Eigen::EigenvaluesOnly);
  const double lo = es.eigenvalues().minCoeff();
  const double hi = es.eigenvalues().maxCoeff();
  if (!(lo > 0.0) || hi / lo >= 1e12) {
    throw SingularCovariance(
        "residual covariance is singular or too ill-conditioned");
  }

  WeightVector out;
  out.w = cov.inverse().diagonal();
  if (!(out.w.minCoeff() > 0.0)) {
    throw SingularCovariance("inverse covariance diagonal is not positive");
  }
  return out;
}

MetricZ weights_to_metric(const WeightVector& w) {
  if (!(w.w.minCoeff() > 0.0)) {
    throw NonPositiveWeight("metric weights must all be positive");
  }
  return MetricZ::diagonal(w.w);
}

}  // namespace se3loss
