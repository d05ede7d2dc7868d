#pragma once

#include <string>
#include <vector>

#include "se3loss/metric_loss.hpp"
#include "se3loss/poses.hpp"

namespace se3loss {

enum class Units { m, mm };

std::string units_name(Units u);

struct PosePair {
  std::string id;
  Pose6 truth;
  Pose6 pred;
};

/// Parse-validated ground-truth/prediction pairs with their length unit.
struct PosePairSet {
  Units units{Units::m};
  std::vector<PosePair> records;
};

/// Pairs file: header `# units=m|mm, order=axisangle-translation`, then one
/// CSV record per line: id, truth (rx,ry,rz,tx,ty,tz), pred (same 6).
/// Throws ParseError (with line number), DuplicateId, UnitsMissing.
PosePairSet load_pairs(const std::string& path);

/// Inverse of load_pairs; values printed with 17 significant digits so a
/// write-then-read round-trip is bit-stable.
void save_pairs(const PosePairSet& pairs, const std::string& path);

/// Metric file: 6 lines of 6 numbers (row-major Z) or a single line of 6
/// positive numbers interpreted as diagonal weights.
MetricZ load_metric(const std::string& path);

/// Whitespace- or comma-separated numbers, '#' comments ignored.
std::vector<double> load_scalars(const std::string& path);

/// "rx,ry,rz,tx,ty,tz" -> Pose6 (used for CLI pose arguments).
Pose6 parse_pose_literal(const std::string& s);

/// Single line of 6 numbers at 17 significant digits; readable back as a
/// diagonal metric.
void save_weights(const Vec6& w, const std::string& path, bool with_timestamp);

}  // namespace se3loss
