// Shared test utilities: independent numeric oracles (brute-force matrix
// exponential, Eigen-geometry conversions, finite differences) and random
// input generators. Everything here deliberately avoids the code paths
// under test.
#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Geometry>
#include <functional>
#include <random>
#include <vector>

#include "se3loss/poses.hpp"

namespace oracles {

using se3loss::AxisAngle;
using se3loss::Mat3;
using se3loss::Mat4;
using se3loss::Mat6;
using se3loss::Pose6;
using se3loss::Vec3;
using se3loss::Vec4;
using se3loss::Vec6;

using Rng = std::mt19937_64;

inline Vec3 rand_unit_vec3(Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Vec3 v;
  do {
    v = Vec3(g(rng), g(rng), g(rng));
  } while (v.norm() < 1e-6);
  return v.normalized();
}

inline Vec3 rand_rotvec(Rng& rng, double min_angle, double max_angle) {
  std::uniform_real_distribution<double> u(min_angle, max_angle);
  return Vec3(u(rng) * rand_unit_vec3(rng));
}

inline Vec3 rand_vec3(Rng& rng, double scale) {
  std::uniform_real_distribution<double> u(-scale, scale);
  return Vec3(u(rng), u(rng), u(rng));
}

inline Pose6 rand_pose(Rng& rng, double max_angle = 2.5,
                       double t_scale = 2.0) {
  return Pose6(AxisAngle(rand_rotvec(rng, 0.0, max_angle)),
               rand_vec3(rng, t_scale));
}

inline Mat6 rand_spd6(Rng& rng, double ridge = 0.5) {
  std::normal_distribution<double> g(0.0, 1.0);
  Mat6 A;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) A(i, j) = g(rng);
  return Mat6(A.transpose() * A + ridge * Mat6::Identity());
}

// Brute-force matrix exponential: scaling and squaring over a plain Taylor
// series. Independent of the Rodrigues closed form under test.
inline Mat3 expm_taylor(const Mat3& M) {
  int squarings = 0;
  Mat3 A = M;
  while (A.cwiseAbs().maxCoeff() > 0.25) {
    A /= 2.0;
    ++squarings;
  }
  Mat3 out = Mat3::Identity();
  Mat3 term = Mat3::Identity();
  for (int k = 1; k <= 24; ++k) {
    term = Mat3(term * A / static_cast<double>(k));
    out += term;
  }
  for (int i = 0; i < squarings; ++i) out = Mat3(out * out);
  return out;
}

// Eigen's own rotation-matrix logarithm (via AngleAxis), as an independent
// reference implementation. Eigen can report angles in (pi, 2*pi); wrap
// into the canonical [0, pi] ball for comparisons.
inline Vec3 log_rot_eigen(const Mat3& R) {
  const Eigen::AngleAxisd aa(R);
  double angle = aa.angle();
  Vec3 axis = aa.axis();
  if (angle > se3loss::kPi) {
    angle = 2.0 * se3loss::kPi - angle;
    axis = -axis;
  }
  return Vec3(angle * axis);
}

inline Mat4 to_hom(const Pose6& p) {
  Mat4 X = Mat4::Identity();
  const double th = p.r.angle();
  if (th > 0.0) {
    X.block<3, 3>(0, 0) =
        Eigen::AngleAxisd(th, Vec3(p.r.r / th)).toRotationMatrix();
  }
  X.block<3, 1>(0, 3) = p.t;
  return X;
}

inline double chart_distance(const Pose6& a, const Pose6& b) {
  return (a.vec() - b.vec()).norm();
}

inline Mat6 sample_cov6(const std::vector<Vec6>& xs, bool center) {
  Vec6 mean = Vec6::Zero();
  if (center) {
    for (const Vec6& x : xs) mean += x;
    mean /= static_cast<double>(xs.size());
  }
  Mat6 cov = Mat6::Zero();
  for (const Vec6& x : xs) cov += (x - mean) * (x - mean).transpose();
  return cov / static_cast<double>(xs.size() - 1);
}

// Samples with ~zero mean whose unbiased sample covariance equals the given
// SPD target to rounding: draw, centre, whiten by the empirical Cholesky
// factor, then colour by the target's.
inline std::vector<Vec6> samples_with_cov6(Rng& rng, int n,
                                           const Mat6& target) {
  std::normal_distribution<double> normal;
  std::vector<Vec6> xs(n);
  Vec6 mean = Vec6::Zero();
  for (Vec6& x : xs) {
    for (int k = 0; k < 6; ++k) x(k) = normal(rng);
    mean += x;
  }
  mean /= static_cast<double>(n);
  for (Vec6& x : xs) x -= mean;
  const Mat6 L_emp = Eigen::LLT<Mat6>(sample_cov6(xs, false)).matrixL();
  const Mat6 L_tgt = Eigen::LLT<Mat6>(target).matrixL();
  for (Vec6& x : xs) {
    x = L_tgt * L_emp.triangularView<Eigen::Lower>().solve(x);
  }
  return xs;
}

// Central finite-difference Jacobian of a chart-to-chart map.
inline Mat6 fd_jacobian6(const std::function<Vec6(const Vec6&)>& f,
                         const Vec6& x, double h) {
  Mat6 J;
  for (int j = 0; j < 6; ++j) {
    Vec6 xp = x, xm = x;
    xp[j] += h;
    xm[j] -= h;
    J.col(j) = (f(xp) - f(xm)) / (2.0 * h);
  }
  return J;
}

inline Vec6 fd_gradient6(const std::function<double(const Vec6&)>& f,
                         const Vec6& x, double h) {
  Vec6 g;
  for (int j = 0; j < 6; ++j) {
    Vec6 xp = x, xm = x;
    xp[j] += h;
    xm[j] -= h;
    g[j] = (f(xp) - f(xm)) / (2.0 * h);
  }
  return g;
}

template <typename A, typename B>
double max_abs_diff(const A& a, const B& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace oracles
