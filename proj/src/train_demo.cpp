#include "se3loss/train_demo.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <random>

#include "se3loss/errors.hpp"

namespace se3loss {

namespace {

constexpr int kTrain = 256;
constexpr int kVal = 64;
constexpr int kHidden = 64;
constexpr int kBatch = 32;
constexpr int kEvalEvery = 250;
// Halve the step size at these milestones (twice at most) so late training
// settles instead of oscillating at the SGD noise floor.
constexpr int kLrDecayEvery = 2000;
constexpr double kMomentum = 0.9;
// The skip path fits the near-linear part of the task in a few hundred
// steps; damping it keeps the hidden units responsible for the curvature
// instead of chasing the skip's residual noise.
constexpr double kSkipLrScale = 0.25;
constexpr double kMaxAngle = 1.2;
constexpr double kMaxTrans = 1.5;
// Hidden preactivations stay well inside tanh's linear range at this
// scale, which the near-linear chart-to-chart task needs.
constexpr double kW1Scale = 0.1;

using Eigen::MatrixXd;
using Eigen::VectorXd;

int output_dim(LossKind k) {
  switch (k) {
    case LossKind::geodesic:
      return 6;
    case LossKind::posenet:
      return 7;
    case LossKind::anchors:
      return 9;
  }
  return 6;
}

struct Sample {
  Vec6 input;
  Pose6 target;
};

Pose6 random_target(std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> uangle(0.0, kMaxAngle);
  std::uniform_real_distribution<double> utrans(-kMaxTrans, kMaxTrans);
  Vec3 axis(gauss(rng), gauss(rng), gauss(rng));
  while (axis.norm() < 1e-6) {
    axis = Vec3(gauss(rng), gauss(rng), gauss(rng));
  }
  axis.normalize();
  const double angle = uangle(rng);
  const Vec3 t(utrans(rng), utrans(rng), utrans(rng));
  return Pose6(AxisAngle(Vec3(angle * axis)), t);
}

std::vector<Sample> make_dataset(int n, double sigma, std::mt19937_64& rng) {
  std::normal_distribution<double> noise(0.0, 1.0);
  std::vector<Sample> out(n);
  for (Sample& s : out) {
    s.target = random_target(rng);
    s.input = s.target.vec();
    for (int i = 0; i < 6; ++i) {
      s.input[i] += sigma * noise(rng);
    }
  }
  return out;
}

Pose6 decode(LossKind kind, const VectorXd& y, const AnchorRefs& refs) {
  switch (kind) {
    case LossKind::geodesic:
      return Pose6::from_vec(Vec6(y.head<6>()));
    case LossKind::posenet: {
      const Quat q = Quat::canonical(Vec4(y.head<4>()));
      return Pose6(to_axis_angle(q), Vec3(y.tail<3>()));
    }
    case LossKind::anchors: {
      AnchorPoints a;
      a.a1 = y.segment<3>(0);
      a.a2 = y.segment<3>(3);
      a.a3 = y.segment<3>(6);
      return anchors_to_pose(a, refs);
    }
  }
  return Pose6::identity();
}

// Loss and d loss / d y for one sample under the chosen head.
double head_loss_grad(LossKind kind, const Pose6& target, const VectorXd& y,
                      const AnchorRefs& refs, const Beta& beta,
                      VectorXd* dy) {
  switch (kind) {
    case LossKind::geodesic: {
      const LossGrad lg =
          geodesic_grad(target, Pose6::from_vec(Vec6(y.head<6>())),
                        MetricZ::identity());
      *dy = lg.grad.v;
      return lg.loss;
    }
    case LossKind::posenet: {
      const PoseQT truth{to_quat(target.r), target.t};
      const PosenetResult r =
          posenet_loss(truth, Vec4(y.head<4>()), Vec3(y.tail<3>()), beta);
      *dy = r.grad();
      return r.loss;
    }
    case LossKind::anchors: {
      const AnchorPoints truth = pose_to_anchors(target, refs);
      AnchorPoints pred;
      pred.a1 = y.segment<3>(0);
      pred.a2 = y.segment<3>(3);
      pred.a3 = y.segment<3>(6);
      const AnchorLossResult r = anchor_loss(truth, pred);
      *dy = r.grad;
      return r.loss;
    }
  }
  return 0.0;
}

VectorXd identity_output(LossKind kind, const AnchorRefs& refs) {
  VectorXd b = VectorXd::Zero(output_dim(kind));
  switch (kind) {
    case LossKind::geodesic:
      break;
    case LossKind::posenet:
      b[0] = 1.0;  // unit quaternion, zero translation
      break;
    case LossKind::anchors:
      b.segment<3>(0) = refs.r1;
      b.segment<3>(3) = refs.r2;
      b.segment<3>(6) = refs.r3;
      break;
  }
  return b;
}

}  // namespace

const char* loss_kind_name(LossKind k) {
  switch (k) {
    case LossKind::geodesic:
      return "geodesic";
    case LossKind::posenet:
      return "posenet";
    case LossKind::anchors:
      return "anchors";
  }
  return "?";
}

TrainResult train_demo(const TrainConfig& cfg, LossKind kind,
                       double noise_sigma) {
  cfg.validate();
  if (noise_sigma < 0.0) {
    throw InputError("noise sigma must be nonnegative");
  }

  const int dim_out = output_dim(kind);
  const AnchorRefs refs;
  const Beta beta(1.0);  // synthetic task has comparable unit scales

  std::mt19937_64 rng(cfg.seed);
  const std::vector<Sample> train = make_dataset(kTrain, noise_sigma, rng);
  const std::vector<Sample> val = make_dataset(kVal, noise_sigma, rng);

  std::uniform_real_distribution<double> u11(-1.0, 1.0);
  MatrixXd W1(kHidden, 6);
  for (int i = 0; i < kHidden; ++i)
    for (int j = 0; j < 6; ++j) W1(i, j) = kW1Scale * u11(rng);
  VectorXd b1 = VectorXd::Zero(kHidden);
  const double w2_scale = std::sqrt(6.0 / (kHidden + dim_out));
  MatrixXd W2(dim_out, kHidden);
  for (int i = 0; i < dim_out; ++i)
    for (int j = 0; j < kHidden; ++j) W2(i, j) = w2_scale * u11(rng);
  // Skip-layer connection; starts at zero so the initial net is unchanged.
  MatrixXd W3 = MatrixXd::Zero(dim_out, 6);
  VectorXd b2 = identity_output(kind, refs);

  auto forward = [&](const Vec6& x, VectorXd* h) -> VectorXd {
    *h = (W1 * x + b1).array().tanh().matrix();
    return W2 * (*h) + W3 * x + b2;
  };

  auto mean_val_gd = [&]() {
    double sum = 0.0;
    VectorXd h;
    for (const Sample& s : val) {
      const VectorXd y = forward(s.input, &h);
      const Pose6 p_hat = decode(kind, y, refs);
      sum += std::sqrt(geodesic_loss(s.target, p_hat, MetricZ::identity()));
    }
    return sum / static_cast<double>(val.size());
  };

  TrainResult res;
  res.eval_every = kEvalEvery;
  res.steps = cfg.max_iter;
  res.initial_gd = mean_val_gd();
  res.gd_trace.push_back(res.initial_gd);

  std::uniform_int_distribution<int> pick(0, kTrain - 1);
  MatrixXd dW1(kHidden, 6), dW2(dim_out, kHidden), dW3(dim_out, 6);
  VectorXd db1(kHidden), db2(dim_out), h, dy;
  MatrixXd vW1 = MatrixXd::Zero(kHidden, 6);
  MatrixXd vW2 = MatrixXd::Zero(dim_out, kHidden);
  MatrixXd vW3 = MatrixXd::Zero(dim_out, 6);
  VectorXd vb1 = VectorXd::Zero(kHidden), vb2 = VectorXd::Zero(dim_out);

  for (int step = 1; step <= cfg.max_iter; ++step) {
    dW1.setZero();
    dW2.setZero();
    dW3.setZero();
    db1.setZero();
    db2.setZero();
    double batch_loss = 0.0;

    for (int k = 0; k < kBatch; ++k) {
      const Sample& s = train[pick(rng)];
      const VectorXd y = forward(s.input, &h);
      batch_loss += head_loss_grad(kind, s.target, y, refs, beta, &dy);
      // Backprop through y = W2 h + W3 x + b2, h = tanh(W1 x + b1).
      dW2 += dy * h.transpose();
      dW3 += dy * s.input.transpose();
      db2 += dy;
      const VectorXd dpre =
          (W2.transpose() * dy).cwiseProduct((1.0 - h.array().square()).matrix());
      dW1 += dpre * s.input.transpose();
      db1 += dpre;
    }
    if (!std::isfinite(batch_loss)) {
      throw Diverged("training loss left the finite range");
    }
    const int stage = std::min(2, (step - 1) / kLrDecayEvery);
    const double scale = std::ldexp(cfg.lr, -stage) / kBatch;
    vW1 = kMomentum * vW1 + dW1;
    vb1 = kMomentum * vb1 + db1;
    vW2 = kMomentum * vW2 + dW2;
    vW3 = kMomentum * vW3 + dW3;
    vb2 = kMomentum * vb2 + db2;
    W1 -= scale * vW1;
    b1 -= scale * vb1;
    W2 -= scale * vW2;
    W3 -= kSkipLrScale * scale * vW3;
    b2 -= scale * vb2;

    if (step % kEvalEvery == 0 || step == cfg.max_iter) {
      res.gd_trace.push_back(mean_val_gd());
    }
  }
  res.final_gd = res.gd_trace.back();
  return res;
}

}  // namespace se3loss
