#pragma once

#include <string>
#include <vector>

#include "se3loss/dataset.hpp"
#include "se3loss/metric_loss.hpp"

namespace se3loss {

struct EvalRow {
  std::string id;
  Vec3 euler_err_deg{Vec3::Zero()};  // |yaw, pitch, roll| truth vs pred
  Vec3 trans_err{Vec3::Zero()};      // per-axis absolute, dataset units
  double gd{0.0};                    // sqrt(geodesic loss)
  double gd_sq{0.0};                 // geodesic loss
  bool cut_locus{false};             // excluded from the summary rows
};

/// Per-record errors plus arithmetic means and unbiased sample variances
/// over the non-excluded rows.
struct EvalReport {
  Units units{Units::m};
  std::vector<EvalRow> rows;
  Vec3 mean_euler_err_deg{Vec3::Zero()};
  Vec3 mean_trans_err{Vec3::Zero()};
  double mean_gd{0.0};
  double mean_gd_sq{0.0};
  Vec3 var_euler_err_deg{Vec3::Zero()};
  Vec3 var_trans_err{Vec3::Zero()};
  double var_gd{0.0};
  double var_gd_sq{0.0};
  int included{0};
  int excluded_cut_locus{0};
};

/// Absolute yaw/pitch/roll error in degrees (differences wrapped to
/// (-180, 180]), per-axis absolute translation error, and the geodesic
/// distance under Z per record. Cut-locus pairs are flagged and excluded
/// from the means rather than failing the whole report.
EvalReport evaluate(const PosePairSet& pairs, const MetricZ& Z);

/// CSV rows followed by summary comment lines; 17 significant digits.
/// The timestamp line is omitted when with_timestamp is false so reruns
/// are byte-identical.
void save_report(const EvalReport& report, const std::string& path,
                 bool with_timestamp);

}  // namespace se3loss
