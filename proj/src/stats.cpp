#include "se3loss/stats.hpp"

#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <limits>

#include "se3loss/errors.hpp"

namespace se3loss {

namespace {

struct Moments {
  double n;
  double mean;
  double var;  // unbiased
};

Moments moments(const std::vector<double>& x, const char* name) {
  if (x.size() < 2) {
    throw InputError(std::string("ttest sample '") + name +
                     "' needs at least 2 values");
  }
  double sum = 0.0;
  for (double v : x) {
    if (!std::isfinite(v)) {
      throw InputError(std::string("ttest sample '") + name +
                       "' contains a non-finite value");
    }
    sum += v;
  }
  Moments m;
  m.n = static_cast<double>(x.size());
  m.mean = sum / m.n;
  double ss = 0.0;
  for (double v : x) ss += (v - m.mean) * (v - m.mean);
  m.var = ss / (m.n - 1.0);
  return m;
}

}  // namespace

TTestResult ttest(const std::vector<double>& a, const std::vector<double>& b,
                  bool pooled) {
  const Moments ma = moments(a, "a");
  const Moments mb = moments(b, "b");

  TTestResult out;
  const double diff = ma.mean - mb.mean;

  double denom, dof;
  if (pooled) {
    const double sp2 = ((ma.n - 1.0) * ma.var + (mb.n - 1.0) * mb.var) /
                       (ma.n + mb.n - 2.0);
    denom = std::sqrt(sp2 * (1.0 / ma.n + 1.0 / mb.n));
    dof = ma.n + mb.n - 2.0;
  } else {
    const double va = ma.var / ma.n;
    const double vb = mb.var / mb.n;
    denom = std::sqrt(va + vb);
    dof = (va + vb) * (va + vb) /
          (va * va / (ma.n - 1.0) + vb * vb / (mb.n - 1.0));
  }

  if (denom == 0.0) {
    if (diff == 0.0) {
      throw ZeroVariance("both samples are constant and equal");
    }
    out.t = diff > 0.0 ? std::numeric_limits<double>::infinity()
                       : -std::numeric_limits<double>::infinity();
    out.dof = ma.n + mb.n - 2.0;
    out.p = 0.0;
    out.significant = true;
    return out;
  }

  out.t = diff / denom;
  out.dof = dof;
  const boost::math::students_t_distribution<double> dist(dof);
  out.p = 2.0 * boost::math::cdf(dist, -std::abs(out.t));
  out.significant = out.p < 0.05;
  return out;
}

}  // namespace se3loss
