// posebench: evaluation reports, adaptive metric weights, gradient-descent
// pose alignment, gradient checking, a synthetic training demo, and a
// two-sample t-test, over pose pair files.
#include <CLI11.hpp>
#include <cstdio>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "se3loss/adaptive_weights.hpp"
#include "se3loss/align.hpp"
#include "se3loss/dataset.hpp"
#include "se3loss/errors.hpp"
#include "se3loss/evaluate.hpp"
#include "se3loss/metric_loss.hpp"
#include "se3loss/stats.hpp"
#include "se3loss/train_demo.hpp"

namespace {

using namespace se3loss;

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fmt6(const Vec6& v) {
  std::string s;
  for (int i = 0; i < 6; ++i) {
    if (i) s += ",";
    s += fmt17(v[i]);
  }
  return s;
}

MetricZ metric_from_flags(const std::string& metric_path, bool identity) {
  if (identity || metric_path.empty()) return MetricZ::identity();
  return load_metric(metric_path);
}

int run_eval(const std::string& pairs_path, const std::string& metric_path,
             bool identity, const std::string& out_path, bool timestamp) {
  const PosePairSet pairs = load_pairs(pairs_path);
  const MetricZ Z = metric_from_flags(metric_path, identity);
  const EvalReport rep = evaluate(pairs, Z);
  save_report(rep, out_path, timestamp);
  std::cout << "records " << rep.rows.size() << " (excluded at cut locus: "
            << rep.excluded_cut_locus << ")\n";
  std::cout << "mean euler err deg " << fmt17(rep.mean_euler_err_deg[0]) << " "
            << fmt17(rep.mean_euler_err_deg[1]) << " "
            << fmt17(rep.mean_euler_err_deg[2]) << "\n";
  std::cout << "mean trans err (" << units_name(rep.units) << ") "
            << fmt17(rep.mean_trans_err[0]) << " "
            << fmt17(rep.mean_trans_err[1]) << " "
            << fmt17(rep.mean_trans_err[2]) << "\n";
  std::cout << "mean gd " << fmt17(rep.mean_gd) << "  mean gd^2 "
            << fmt17(rep.mean_gd_sq) << "\n";
  std::cout << "wrote " << out_path << "\n";
  return 0;
}

int run_weights(const std::string& pairs_path, const std::string& out_path,
                bool no_center, bool timestamp) {
  const PosePairSet pairs = load_pairs(pairs_path);
  const ResidualSet X = residuals(pairs);
  const WeightVector w = compute_weights(X, !no_center);
  weights_to_metric(w);  // validates the result is a usable metric
  save_weights(w.w, out_path, timestamp);
  std::cout << "weights " << fmt6(w.w) << "\n";
  std::cout << "wrote " << out_path << "\n";
  return 0;
}

int run_align(const std::string& init_s, const std::string& target_s,
              const std::string& metric_path, double lr, int max_iter,
              double threshold, bool trace_out) {
  const Pose6 init = parse_pose_literal(init_s);
  const Pose6 target = parse_pose_literal(target_s);
  const MetricZ Z = metric_from_flags(metric_path, false);
  TrainConfig cfg;
  cfg.lr = lr;
  cfg.max_iter = max_iter;
  cfg.threshold = threshold;
  const AlignTrace trace = align(init, target, Z, cfg);
  if (trace_out) {
    for (const AlignStep& s : trace.steps) {
      std::cout << s.iteration << "," << fmt17(s.loss) << ","
                << fmt6(s.pose.vec()) << "\n";
    }
  }
  const AlignStep& last = trace.final_step();
  std::cout << (trace.converged ? "converged" : "max-iterations") << " at "
            << last.iteration << " iterations, loss " << fmt17(last.loss)
            << ", halvings " << trace.halvings << "\n";
  std::cout << "pose " << fmt6(last.pose.vec()) << "\n";
  return 0;
}

int run_gradcheck(int samples, double step, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> uangle(0.05, 3.0);
  std::uniform_real_distribution<double> utrans(-2.0, 2.0);

  auto rand_pose = [&]() {
    Vec3 axis(gauss(rng), gauss(rng), gauss(rng));
    axis.normalize();
    return Pose6(AxisAngle(Vec3(uangle(rng) / 2.0 * axis)),
                 Vec3(utrans(rng), utrans(rng), utrans(rng)));
  };
  auto rand_spd = [&]() {
    Mat6 A;
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) A(i, j) = gauss(rng);
    return MetricZ::from_matrix(Mat6(A.transpose() * A + 0.5 * Mat6::Identity()));
  };

  double worst = 0.0;
  for (int k = 0; k < samples; ++k) {
    const GradCheckReport rep =
        grad_check(rand_pose(), rand_pose(), rand_spd(), step);
    worst = std::max(worst, rep.max_rel_error);
  }
  std::cout << "samples " << samples << ", step " << fmt17(step)
            << ", max relative error " << fmt17(worst) << "\n";
  if (worst >= 1e-4) {
    throw Diverged("gradient check exceeded relative error 1e-4");
  }
  return 0;
}

int run_train_demo(const std::string& loss_name, std::uint64_t seed, int steps,
                   double lr, double noise) {
  LossKind kind;
  if (loss_name == "geodesic") {
    kind = LossKind::geodesic;
  } else if (loss_name == "posenet") {
    kind = LossKind::posenet;
  } else if (loss_name == "anchors") {
    kind = LossKind::anchors;
  } else {
    throw InputError("unknown loss '" + loss_name +
                     "' (expected geodesic|posenet|anchors)");
  }
  TrainConfig cfg;
  cfg.seed = seed;
  cfg.max_iter = steps;
  cfg.lr = lr;
  const TrainResult res = train_demo(cfg, kind, noise);
  for (size_t i = 0; i < res.gd_trace.size(); ++i) {
    const int step =
        i == 0 ? 0
               : std::min(static_cast<int>(i) * res.eval_every, res.steps);
    std::cout << "step " << step << " mean val gd " << fmt17(res.gd_trace[i])
              << "\n";
  }
  std::cout << "loss " << loss_name << ", seed " << seed << ": initial gd "
            << fmt17(res.initial_gd) << ", final gd " << fmt17(res.final_gd)
            << ", reduction x"
            << fmt17(res.initial_gd / std::max(res.final_gd, 1e-300)) << "\n";
  return 0;
}

int run_ttest(const std::string& a_path, const std::string& b_path,
              bool pooled) {
  const std::vector<double> a = load_scalars(a_path);
  const std::vector<double> b = load_scalars(b_path);
  const TTestResult r = ttest(a, b, pooled);
  std::cout << (pooled ? "pooled" : "welch") << " t " << fmt17(r.t) << ", dof "
            << fmt17(r.dof) << ", two-sided p " << fmt17(r.p) << ", "
            << (r.significant ? "significant" : "not significant")
            << " at 0.05\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pose-loss benchmark harness"};
  app.require_subcommand(1);

  std::string pairs_path, metric_path, out_path;
  bool identity = false, no_timestamp = false, no_center = false;
  auto* eval = app.add_subcommand("eval", "evaluate a pairs file");
  eval->add_option("--pairs", pairs_path, "pairs file")->required();
  eval->add_option("--metric", metric_path, "metric file (full or diag)");
  eval->add_flag("--identity", identity, "use the identity metric");
  eval->add_option("--out", out_path, "report output path")->required();
  eval->add_flag("--no-timestamp", no_timestamp, "omit the timestamp line");

  auto* weights = app.add_subcommand("weights", "adaptive metric weights");
  weights->add_option("--pairs", pairs_path, "pairs file")->required();
  weights->add_option("--out", out_path, "weights output path")->required();
  weights->add_flag("--no-center", no_center,
                    "skip mean subtraction in the covariance");
  weights->add_flag("--no-timestamp", no_timestamp,
                    "omit the timestamp line");

  std::string init_s, target_s;
  double lr = 0.4, threshold = 1e-14;
  int max_iter = 10000;
  bool trace_flag = false;
  auto* align_cmd =
      app.add_subcommand("align", "gradient-descent pose alignment");
  align_cmd->add_option("--init", init_s, "initial pose rx,ry,rz,tx,ty,tz")
      ->required();
  align_cmd->add_option("--target", target_s, "target pose")->required();
  align_cmd->add_option("--metric", metric_path, "metric file");
  align_cmd->add_option("--lr", lr, "learning rate");
  align_cmd->add_option("--max-iter", max_iter, "iteration cap");
  align_cmd->add_option("--threshold", threshold, "loss convergence bound");
  align_cmd->add_flag("--trace", trace_flag, "print every iteration");

  int samples = 100;
  double step = 1e-6;
  std::uint64_t seed = 42;
  auto* gradcheck_cmd =
      app.add_subcommand("gradcheck", "analytic vs numeric gradients");
  gradcheck_cmd->add_option("--samples", samples, "random triples");
  gradcheck_cmd->add_option("--step", step, "central-difference step");
  gradcheck_cmd->add_option("--seed", seed, "RNG seed");

  std::string loss_name = "geodesic";
  int demo_steps = 5000;
  double demo_lr = 0.1, demo_noise = 0.05;
  std::uint64_t demo_seed = 42;
  auto* demo = app.add_subcommand("train-demo", "synthetic regression demo");
  demo->add_option("--loss", loss_name, "geodesic|posenet|anchors");
  demo->add_option("--seed", demo_seed, "RNG seed");
  demo->add_option("--steps", demo_steps, "SGD steps");
  demo->add_option("--lr", demo_lr, "SGD learning rate");
  demo->add_option("--noise", demo_noise, "input noise sigma");

  std::string a_path, b_path;
  bool pooled = false;
  auto* ttest_cmd = app.add_subcommand("ttest", "two-sample t-test");
  ttest_cmd->add_option("--a", a_path, "first sample file")->required();
  ttest_cmd->add_option("--b", b_path, "second sample file")->required();
  ttest_cmd->add_flag("--pooled", pooled,
                      "pooled-variance Student's t instead of Welch");

  try {
    app.parse(argc, argv);
    if (eval->parsed()) {
      return run_eval(pairs_path, metric_path, identity, out_path,
                      !no_timestamp);
    }
    if (weights->parsed()) {
      return run_weights(pairs_path, out_path, no_center, !no_timestamp);
    }
    if (align_cmd->parsed()) {
      return run_align(init_s, target_s, metric_path, lr, max_iter, threshold,
                       trace_flag);
    }
    if (gradcheck_cmd->parsed()) {
      return run_gradcheck(samples, step, seed);
    }
    if (demo->parsed()) {
      return run_train_demo(loss_name, demo_seed, demo_steps, demo_lr,
                            demo_noise);
    }
    if (ttest_cmd->parsed()) {
      return run_ttest(a_path, b_path, pooled);
    }
    return 0;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const se3loss::InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const se3loss::NumericError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 3;
  }
}
