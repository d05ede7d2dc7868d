#include "se3loss/evaluate.hpp"

#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>

#include "se3loss/errors.hpp"

namespace se3loss {

namespace {

double wrap_deg(double d) {
  d = std::fmod(d, 360.0);
  if (d > 180.0) d -= 360.0;
  if (d <= -180.0) d += 360.0;
  return d;
}

Vec3 euler_deg(const AxisAngle& r) {
  const EulerZYX e = to_euler_zyx(r);
  constexpr double k = 180.0 / kPi;
  return Vec3(e.yaw * k, e.pitch * k, e.roll * k);
}

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

EvalReport evaluate(const PosePairSet& pairs, const MetricZ& Z) {
  EvalReport rep;
  rep.units = pairs.units;
  rep.rows.reserve(pairs.records.size());

  for (const PosePair& rec : pairs.records) {
    EvalRow row;
    row.id = rec.id;
    const Vec3 et = euler_deg(rec.truth.r);
    const Vec3 ep = euler_deg(rec.pred.r);
    for (int i = 0; i < 3; ++i) {
      row.euler_err_deg[i] = std::abs(wrap_deg(ep[i] - et[i]));
    }
    row.trans_err = (rec.pred.t - rec.truth.t).cwiseAbs();
    try {
      row.gd_sq = geodesic_loss(rec.truth, rec.pred, Z);
      row.gd = std::sqrt(row.gd_sq);
    } catch (const CutLocus&) {
      row.cut_locus = true;
      ++rep.excluded_cut_locus;
    }
    rep.rows.push_back(row);
  }

  for (const EvalRow& row : rep.rows) {
    if (row.cut_locus) continue;
    ++rep.included;
    rep.mean_euler_err_deg += row.euler_err_deg;
    rep.mean_trans_err += row.trans_err;
    rep.mean_gd += row.gd;
    rep.mean_gd_sq += row.gd_sq;
  }
  if (rep.included > 0) {
    const double n = rep.included;
    rep.mean_euler_err_deg /= n;
    rep.mean_trans_err /= n;
    rep.mean_gd /= n;
    rep.mean_gd_sq /= n;
  }
  if (rep.included > 1) {
    const double m = rep.included - 1;
    for (const EvalRow& row : rep.rows) {
      if (row.cut_locus) continue;
      rep.var_euler_err_deg +=
          (row.euler_err_deg - rep.mean_euler_err_deg).cwiseAbs2();
      rep.var_trans_err += (row.trans_err - rep.mean_trans_err).cwiseAbs2();
      rep.var_gd += (row.gd - rep.mean_gd) * (row.gd - rep.mean_gd);
      rep.var_gd_sq +=
          (row.gd_sq - rep.mean_gd_sq) * (row.gd_sq - rep.mean_gd_sq);
    }
    rep.var_euler_err_deg /= m;
    rep.var_trans_err /= m;
    rep.var_gd /= m;
    rep.var_gd_sq /= m;
  }
  return rep;
}

void save_report(const EvalReport& report, const std::string& path,
                 bool with_timestamp) {
  std::ofstream out(path);
  if (!out) {
    throw InputError("cannot write file: " + path);
  }
  out << "# units=" << units_name(report.units)
      << ", columns=id,yaw_err_deg,pitch_err_deg,roll_err_deg,"
         "tx_err,ty_err,tz_err,gd,gd_sq,flag\n";
  if (with_timestamp) {
    std::time_t now = std::time(nullptr);
    char buf[64];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    out << "# generated " << buf << "\n";
  }
  auto emit8 = [&](const Vec3& e, const Vec3& t, double g, double g2) {
    for (int i = 0; i < 3; ++i) out << "," << fmt17(e[i]);
    for (int i = 0; i < 3; ++i) out << "," << fmt17(t[i]);
    out << "," << fmt17(g) << "," << fmt17(g2);
  };
  for (const EvalRow& row : report.rows) {
    out << row.id;
    emit8(row.euler_err_deg, row.trans_err, row.gd, row.gd_sq);
    out << "," << (row.cut_locus ? "cutlocus" : "ok") << "\n";
  }
  out << "# mean";
  emit8(report.mean_euler_err_deg, report.mean_trans_err, report.mean_gd,
        report.mean_gd_sq);
  out << "\n# var";
  emit8(report.var_euler_err_deg, report.var_trans_err, report.var_gd,
        report.var_gd_sq);
  out << "\n# included," << report.included << "\n";
  out << "# excluded_cut_locus," << report.excluded_cut_locus << "\n";
}

}  // namespace se3loss
