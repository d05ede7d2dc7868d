#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "se3loss/metric_loss.hpp"

using namespace se3loss;
using oracles::rand_pose;
using oracles::rand_rotvec;
using oracles::rand_spd6;
using oracles::rand_vec3;
using oracles::to_hom;

namespace {

// Prediction/truth pair whose relative rotation angle is drawn from
// [min_angle, max_angle], safely inside the chart.
struct SamplePair {
  Pose6 truth, pred;
};

SamplePair sample_pair(oracles::Rng& rng, double min_angle,
                       double max_angle) {
  SamplePair s;
  s.pred = rand_pose(rng, 1.4);
  const Pose6 rel(AxisAngle(rand_rotvec(rng, min_angle, max_angle)),
                  rand_vec3(rng, 2.0));
  s.truth = compose(s.pred, rel);
  return s;
}

}  // namespace

TEST_CASE("MetricZ validation") {
  CHECK(MetricZ::identity().is_identity());
  CHECK(MetricZ().matrix() == Mat6::Identity());

  oracles::Rng rng(301);
  for (int i = 0; i < 50; ++i) {
    const Mat6 Z = rand_spd6(rng);
    CHECK((MetricZ::from_matrix(Z).matrix() - Z).norm() == 0.0);
  }

  Mat6 asym = Mat6::Identity();
  asym(0, 1) += 1e-6;
  CHECK_THROWS_AS(MetricZ::from_matrix(asym), NotSPD);

  Mat6 barely = Mat6::Identity();
  barely(0, 1) += 1e-13;  // inside the symmetry tolerance
  CHECK_NOTHROW(MetricZ::from_matrix(barely));

  Vec6 eigs;
  eigs << 1, 1, 1, 1, 1, 1e-13;
  CHECK_THROWS_AS(MetricZ::from_matrix(Mat6(eigs.asDiagonal())), NotSPD);
  CHECK_THROWS_AS(MetricZ::from_matrix(Mat6(-Mat6::Identity())), NotSPD);

  Vec6 w;
  w << 1, 2, 3, 4, 5, 6;
  CHECK(MetricZ::diagonal(w).matrix() == Mat6(w.asDiagonal()));
  w(3) = 0.0;
  CHECK_THROWS_AS(MetricZ::diagonal(w), NotSPD);
  w(3) = -1.0;
  CHECK_THROWS_AS(MetricZ::diagonal(w), NotSPD);
}

TEST_CASE("geodesic_loss analytic cases") {
  oracles::Rng rng(302);
  for (int i = 0; i < 100; ++i) {
    const Pose6 p = rand_pose(rng, 2.0);
    CHECK(geodesic_loss(p, p, MetricZ::identity()) < 1e-24);
  }
  const double gold =
      geodesic_loss(Pose6(0, 0, 0, 1, 2, 3), Pose6::identity(),
                    MetricZ::identity());
  CHECK(std::abs(gold - 14.0) < 1e-12);
}

TEST_CASE("geodesic_loss equals the identity-chart squared norm for Z = I") {
  oracles::Rng rng(303);
  for (int i = 0; i < 500; ++i) {
    const SamplePair s = sample_pair(rng, 0.0, 1.5);
    const double loss = geodesic_loss(s.truth, s.pred, MetricZ::identity());
    // Independent route: relative pose through homogeneous matrices.
    const Mat4 rel = Mat4(to_hom(s.pred).inverse() * to_hom(s.truth));
    const Vec3 r = oracles::log_rot_eigen(rel.block<3, 3>(0, 0));
    const Vec3 t = rel.block<3, 1>(0, 3);
    const double ref = r.squaredNorm() + t.squaredNorm();
    CHECK(std::abs(loss - ref) < 1e-9 * (1.0 + ref));
  }
}

TEST_CASE("geodesic_loss is left-invariant for any SPD Z") {
  oracles::Rng rng(304);
  for (int i = 0; i < 300; ++i) {
    const SamplePair s = sample_pair(rng, 0.0, 1.5);
    const Pose6 g = rand_pose(rng, 1.4);
    const MetricZ Z = MetricZ::from_matrix(rand_spd6(rng));
    const double base = geodesic_loss(s.truth, s.pred, Z);
    const double moved =
        geodesic_loss(compose(g, s.truth), compose(g, s.pred), Z);
    CHECK(std::abs(base - moved) < 1e-8 * (1.0 + base));
  }
}

TEST_CASE("metric axioms for Z = I") {
  oracles::Rng rng(305);
  const MetricZ I6 = MetricZ::identity();
  for (int i = 0; i < 300; ++i) {
    const SamplePair s = sample_pair(rng, 0.0, 1.5);
    const double fwd = geodesic_loss(s.truth, s.pred, I6);
    const double bwd = geodesic_loss(s.pred, s.truth, I6);
    CHECK(fwd >= 0.0);
    CHECK(std::abs(fwd - bwd) < 1e-8 * (1.0 + fwd));
  }
  // Identity of indiscernibles at separated scales.
  for (int i = 0; i < 100; ++i) {
    const Pose6 p = rand_pose(rng, 1.4);
    Vec6 dir = Vec6::Zero();
    dir(i % 6) = 1.0;
    const Pose6 near = compose(p, exp_identity(Vec6(1e-10 * dir)));
    CHECK(geodesic_loss(p, near, I6) < 1e-18);
    const Pose6 far = compose(p, exp_identity(Vec6(1e-7 * dir)));
    CHECK(geodesic_loss(p, far, I6) > 1e-16);
  }
}

TEST_CASE("geodesic_grad analytic cases") {
  oracles::Rng rng(306);
  for (int i = 0; i < 100; ++i) {
    const Pose6 p = rand_pose(rng, 2.0);
    CHECK(geodesic_grad(p, p, MetricZ::identity()).grad.v.norm() < 1e-12);
  }
  const LossGrad g = geodesic_grad(Pose6(0, 0, 0, 1, 2, 3),
                                   Pose6::identity(), MetricZ::identity());
  Vec6 want;
  want << 0, 0, 0, -2, -4, -6;
  CHECK(std::abs(g.loss - 14.0) < 1e-12);
  CHECK((g.grad.v - want).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("geodesic_grad matches finite differences with random SPD Z") {
  oracles::Rng rng(307);
  for (int i = 0; i < 200; ++i) {
    const SamplePair s = sample_pair(rng, 0.02, 1.5);
    const MetricZ Z = MetricZ::from_matrix(rand_spd6(rng));
    const Vec6 analytic = geodesic_grad(s.truth, s.pred, Z).grad.v;
    const Vec6 fd = oracles::fd_gradient6(
        [&](const Vec6& q) {
          return geodesic_loss(s.truth, Pose6::from_vec(q), Z);
        },
        s.pred.vec(), 1e-6);
    const double rel = (analytic - fd).cwiseAbs().maxCoeff() /
                       std::max(1.0, fd.cwiseAbs().maxCoeff());
    CHECK(rel < 1e-4);
  }
}

TEST_CASE("gradient is exact for scaled-identity Z") {
  // For Z = c*I the gradient reduces to -2c * J' * u0.
  oracles::Rng rng(308);
  for (int i = 0; i < 100; ++i) {
    const SamplePair s = sample_pair(rng, 0.0, 1.5);
    const MetricZ Z = MetricZ::from_matrix(Mat6(2.5 * Mat6::Identity()));
    const Vec6 grad = geodesic_grad(s.truth, s.pred, Z).grad.v;
    const Mat6 J = left_jacobian(inverse(s.pred), s.pred).J;
    const Vec6 u0 = compose(inverse(s.pred), s.truth).vec();
    const Vec6 ref = -2.0 * 2.5 * (J.transpose() * u0);
    CHECK((grad - ref).cwiseAbs().maxCoeff() < 1e-9 * (1.0 + ref.norm()));
  }
}

TEST_CASE("loss and grad scale linearly in Z") {
  oracles::Rng rng(309);
  for (int i = 0; i < 100; ++i) {
    const SamplePair s = sample_pair(rng, 0.0, 1.5);
    const Mat6 Zm = rand_spd6(rng);
    const LossGrad a = geodesic_grad(s.truth, s.pred, MetricZ::from_matrix(Zm));
    // Powers of two scale exactly, including in floating point.
    const LossGrad b =
        geodesic_grad(s.truth, s.pred, MetricZ::from_matrix(Mat6(4.0 * Zm)));
    CHECK(b.loss == 4.0 * a.loss);
    CHECK(b.grad.v == Vec6(4.0 * a.grad.v));
    const LossGrad c =
        geodesic_grad(s.truth, s.pred, MetricZ::from_matrix(Mat6(3.0 * Zm)));
    CHECK(std::abs(c.loss - 3.0 * a.loss) < 1e-12 * (1.0 + 3.0 * a.loss));
    CHECK((c.grad.v - 3.0 * a.grad.v).cwiseAbs().maxCoeff() <
          1e-12 * (1.0 + a.grad.v.cwiseAbs().maxCoeff()));
  }
}

TEST_CASE("update step along the transported negative gradient descends") {
  oracles::Rng rng(310);
  const double eta = 1e-4;
  for (int i = 0; i < 200; ++i) {
    const SamplePair s = sample_pair(rng, 0.05, 1.5);
    const MetricZ Z = MetricZ::from_matrix(rand_spd6(rng));
    const LossGrad g = geodesic_grad(s.truth, s.pred, Z);
    if (g.loss <= 1e-12) continue;
    const Mat6 J = left_jacobian(inverse(s.pred), s.pred).J;
    const Pose6 stepped =
        compose(s.pred, exp_identity(Vec6(-eta * (J * g.grad.v))));
    CHECK(geodesic_loss(s.truth, stepped, Z) < g.loss);
  }
}

TEST_CASE("grad_check validates its step and reports deviations") {
  const Pose6 p(0, 0, 0, 1, 2, 3);
  CHECK_THROWS_AS(grad_check(p, Pose6::identity(), MetricZ::identity(), 1e-8),
                  InputError);
  CHECK_THROWS_AS(grad_check(p, Pose6::identity(), MetricZ::identity(), 1e-3),
                  InputError);
  CHECK_THROWS_AS(grad_check(p, Pose6::identity(), MetricZ::identity(), 0.0),
                  InputError);

  const GradCheckReport gold =
      grad_check(p, Pose6::identity(), MetricZ::identity(), 1e-6);
  Vec6 want;
  want << 0, 0, 0, -2, -4, -6;
  CHECK((gold.numeric - want).cwiseAbs().maxCoeff() < 1e-6);
  CHECK(gold.max_rel_error < 1e-6);

  oracles::Rng rng(311);
  for (int i = 0; i < 50; ++i) {
    const Pose6 q = rand_pose(rng, 1.4);
    const GradCheckReport same = grad_check(q, q, MetricZ::identity(), 1e-6);
    CHECK(same.max_abs_deviation < 1e-6 * 1e-6 * 10.0);
  }
  for (int i = 0; i < 100; ++i) {
    const SamplePair s = sample_pair(rng, 0.02, 1.5);
    const MetricZ Z = MetricZ::from_matrix(rand_spd6(rng));
    CHECK(grad_check(s.truth, s.pred, Z, 1e-6).max_rel_error < 1e-4);
  }
}

TEST_CASE("cut locus propagates through loss and grad") {
  const Pose6 pred = Pose6::identity();
  const Pose6 truth(AxisAngle(kPi - 1e-7, 0, 0), Vec3::Zero());
  CHECK_THROWS_AS(geodesic_loss(truth, pred, MetricZ::identity()), CutLocus);
  CHECK_THROWS_AS(geodesic_grad(truth, pred, MetricZ::identity()), CutLocus);
}
