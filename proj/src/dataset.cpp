#include "se3loss/dataset.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "se3loss/errors.hpp"

namespace se3loss {

namespace {

std::string trim(const std::string& s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream is(line);
  while (std::getline(is, field, ',')) {
    out.push_back(trim(field));
  }
  if (!line.empty() && line.back() == ',') {
    out.push_back("");
  }
  return out;
}

double parse_double(const std::string& s, long line_no) {
  try {
    size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size() || !std::isfinite(v)) {
      throw std::invalid_argument(s);
    }
    return v;
  } catch (const std::exception&) {
    throw ParseError(line_no, "not a finite number: '" + s + "'");
  }
}

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Header: `# units=m|mm, order=axisangle-translation` (order optional but
// must match when present).
bool parse_header(const std::string& comment, long line_no, Units* units) {
  std::string body = comment;
  for (char& c : body) {
    if (c == ',') c = ' ';
  }
  std::istringstream is(body);
  std::string tok;
  bool found_units = false;
  while (is >> tok) {
    if (tok.rfind("units=", 0) == 0) {
      const std::string u = tok.substr(6);
      if (u == "m") {
        *units = Units::m;
      } else if (u == "mm") {
        *units = Units::mm;
      } else {
        throw ParseError(line_no, "unknown units '" + u + "'");
      }
      found_units = true;
    } else if (tok.rfind("order=", 0) == 0) {
      if (tok.substr(6) != "axisangle-translation") {
        throw ParseError(line_no,
                         "unsupported field order '" + tok.substr(6) + "'");
      }
    }
  }
  return found_units;
}

std::ifstream open_or_throw(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError(0, "cannot open file: " + path);
  }
  return in;
}

}  // namespace

std::string units_name(Units u) { return u == Units::m ? "m" : "mm"; }

PosePairSet load_pairs(const std::string& path) {
  std::ifstream in = open_or_throw(path);
  PosePairSet set;
  bool have_units = false;
  std::unordered_set<std::string> seen;

  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty()) continue;
    if (t[0] == '#') {
      if (!have_units && parse_header(t.substr(1), line_no, &set.units)) {
        have_units = true;
      }
      continue;
    }
    if (!have_units) {
      throw UnitsMissing("record before '# units=' header at line " +
                         std::to_string(line_no));
    }
    const std::vector<std::string> f = split_csv(t);
    if (f.size() != 13) {
      throw ParseError(line_no, "expected 13 fields (id + 2 poses), got " +
                                   std::to_string(f.size()));
    }
    if (f[0].empty()) {
      throw ParseError(line_no, "empty id");
    }
    if (!seen.insert(f[0]).second) {
      throw DuplicateId("duplicate id '" + f[0] + "' at line " +
                        std::to_string(line_no));
    }
    Vec6 a, b;
    for (int i = 0; i < 6; ++i) a[i] = parse_double(f[1 + i], line_no);
    for (int i = 0; i < 6; ++i) b[i] = parse_double(f[7 + i], line_no);
    set.records.push_back(
        {f[0], Pose6::from_vec(a), Pose6::from_vec(b)});
  }
  if (!have_units) {
    throw UnitsMissing("no '# units=' header in " + path);
  }
  return set;
}

void save_pairs(const PosePairSet& pairs, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw InputError("cannot write file: " + path);
  }
  out << "# units=" << units_name(pairs.units)
      << ", order=axisangle-translation\n";
  out << "# id, truth rx,ry,rz,tx,ty,tz, pred rx,ry,rz,tx,ty,tz\n";
  for (const PosePair& r : pairs.records) {
    out << r.id;
    const Vec6 a = r.truth.vec(), b = r.pred.vec();
    for (int i = 0; i < 6; ++i) out << "," << fmt17(a[i]);
    for (int i = 0; i < 6; ++i) out << "," << fmt17(b[i]);
    out << "\n";
  }
}

MetricZ load_metric(const std::string& path) {
  std::ifstream in = open_or_throw(path);
  std::vector<std::vector<double>> rows;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    for (char& c : t) {
      if (c == ',') c = ' ';
    }
    std::istringstream is(t);
    std::vector<double> row;
    std::string tok;
    while (is >> tok) row.push_back(parse_double(tok, line_no));
    if (row.size() != 6) {
      throw ParseError(line_no, "metric rows need 6 numbers, got " +
                                   std::to_string(row.size()));
    }
    rows.push_back(row);
  }
  if (rows.size() == 1) {
    Vec6 w;
    for (int i = 0; i < 6; ++i) w[i] = rows[0][i];
    if (!(w.minCoeff() > 0.0)) {
      throw NonPositiveWeight("diagonal metric weights must be positive");
    }
    return MetricZ::diagonal(w);
  }
  if (rows.size() == 6) {
    Mat6 Z;
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) Z(i, j) = rows[i][j];
    return MetricZ::from_matrix(Z);
  }
  throw ParseError(0, "metric file needs 1 row (diag) or 6 rows (full), got " +
                          std::to_string(rows.size()));
}

std::vector<double> load_scalars(const std::string& path) {
  std::ifstream in = open_or_throw(path);
  std::vector<double> out;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    for (char& c : t) {
      if (c == ',') c = ' ';
    }
    std::istringstream is(t);
    std::string tok;
    while (is >> tok) out.push_back(parse_double(tok, line_no));
  }
  return out;
}

Pose6 parse_pose_literal(const std::string& s) {
  const std::vector<std::string> f = split_csv(s);
  if (f.size() != 6) {
    throw ParseError(0, "pose literal needs 6 comma-separated numbers, got " +
                         std::to_string(f.size()));
  }
  Vec6 v;
  for (int i = 0; i < 6; ++i) v[i] = parse_double(f[i], 0);
  return Pose6::from_vec(v);
}

void save_weights(const Vec6& w, const std::string& path,
                  bool with_timestamp) {
  std::ofstream out(path);
  if (!out) {
    throw InputError("cannot write file: " + path);
  }
  if (with_timestamp) {
    std::time_t now = std::time(nullptr);
    char buf[64];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    out << "# generated " << buf << "\n";
  }
  for (int i = 0; i < 6; ++i) {
    out << (i ? " " : "") << fmt17(w[i]);
  }
  out << "\n";
}

}  // namespace se3loss
