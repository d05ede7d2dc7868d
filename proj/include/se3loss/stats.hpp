#pragma once

#include <vector>

namespace se3loss {

struct TTestResult {
  double t{0.0};
  double dof{0.0};
  double p{1.0};           // two-sided
  bool significant{false};  // p < 0.05
};

/// Two-sample t-test, Welch (unequal variances) by default, pooled-variance
/// Student's on request. Each sample needs at least two finite values
/// (InputError otherwise). When both samples are constant the statistic is
/// undefined: equal constants throw ZeroVariance, different constants give
/// |t| = inf, p = 0.
TTestResult ttest(const std::vector<double>& a, const std::vector<double>& b,
                  bool pooled = false);

}  // namespace se3loss
