#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <string>

#include "oracles.hpp"
#include "se3loss/dataset.hpp"

using namespace se3loss;

namespace {

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / name;
}

std::string write_file(const std::string& name, const std::string& content) {
  const std::filesystem::path p = temp_file(name);
  std::ofstream out(p);
  out << content;
  return p.string();
}

}  // namespace

TEST_CASE("units_name") {
  CHECK(units_name(Units::m) == "m");
  CHECK(units_name(Units::mm) == "mm");
}

TEST_CASE("load_pairs reads the documented format") {
  const std::string path = write_file(
      "ds_ok.csv",
      "# units=m, order=axisangle-translation\n"
      "# id, truth rx,ry,rz,tx,ty,tz, pred rx,ry,rz,tx,ty,tz\n"
      "\n"
      "frame0, 0,0,0, 1,2,3, 0,0,0, 1,2,3\n"
      "frame1, 0.1, -0.2, 0.3, 0.5, 0, -1, 0.1, -0.2, 0.25, 0.5, 0, -1\n");
  const PosePairSet set = load_pairs(path);
  CHECK(set.units == Units::m);
  REQUIRE(set.records.size() == 2);
  CHECK(set.records[0].id == "frame0");
  CHECK(set.records[0].truth.vec() ==
        (Vec6() << 0, 0, 0, 1, 2, 3).finished());
  CHECK(set.records[0].pred.vec() == set.records[0].truth.vec());
  CHECK(set.records[1].pred.r.r(2) == 0.25);

  const std::string mm = write_file("ds_mm.csv",
                                    "# units=mm\n"
                                    "a,0,0,0,0,0,0,0,0,0,0,0,0\n");
  CHECK(load_pairs(mm).units == Units::mm);
}

TEST_CASE("load_pairs accepts a header-only file as an empty set") {
  const std::string path = write_file(
      "ds_empty.csv", "# units=m, order=axisangle-translation\n");
  const PosePairSet set = load_pairs(path);
  CHECK(set.records.empty());
  CHECK(set.units == Units::m);
}

TEST_CASE("load_pairs requires the units header") {
  const std::string none =
      write_file("ds_nohdr.csv", "a,0,0,0,0,0,0,0,0,0,0,0,0\n");
  CHECK_THROWS_AS(load_pairs(none), UnitsMissing);

  const std::string late = write_file("ds_late.csv",
                                      "a,0,0,0,0,0,0,0,0,0,0,0,0\n"
                                      "# units=m\n");
  CHECK_THROWS_AS(load_pairs(late), UnitsMissing);

  const std::string blank = write_file("ds_blank.csv", "");
  CHECK_THROWS_AS(load_pairs(blank), UnitsMissing);
}

TEST_CASE("load_pairs reports parse errors with line numbers") {
  const std::string bad_num = write_file("ds_badnum.csv",
                                         "# units=m\n"
                                         "a,0,0,0,0,0,0,0,0,0,0,0,0\n"
                                         "b,0,0,zero,0,0,0,0,0,0,0,0,0\n");
  try {
    load_pairs(bad_num);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }

  const std::string short_row = write_file("ds_short.csv",
                                           "# units=m\n"
                                           "a,0,0,0,0,0,0\n");
  try {
    load_pairs(short_row);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }

  const std::string no_id = write_file(
      "ds_noid.csv", "# units=m\n,0,0,0,0,0,0,0,0,0,0,0,0\n");
  CHECK_THROWS_AS(load_pairs(no_id), ParseError);

  const std::string inf_val = write_file(
      "ds_inf.csv", "# units=m\na,0,0,0,inf,0,0,0,0,0,0,0,0\n");
  CHECK_THROWS_AS(load_pairs(inf_val), ParseError);

  const std::string bad_units =
      write_file("ds_badunits.csv", "# units=cm\na,0,0,0,0,0,0,0,0,0,0,0,0\n");
  CHECK_THROWS_AS(load_pairs(bad_units), ParseError);

  const std::string bad_order = write_file(
      "ds_badorder.csv",
      "# units=m, order=translation-axisangle\n"
      "a,0,0,0,0,0,0,0,0,0,0,0,0\n");
  CHECK_THROWS_AS(load_pairs(bad_order), ParseError);

  CHECK_THROWS_AS(load_pairs(temp_file("ds_missing_file.csv").string()),
                  ParseError);
}

TEST_CASE("load_pairs rejects duplicate ids") {
  const std::string dup = write_file("ds_dup.csv",
                                     "# units=m\n"
                                     "a,0,0,0,0,0,0,0,0,0,0,0,0\n"
                                     "a,0,0,0,1,0,0,0,0,0,1,0,0\n");
  CHECK_THROWS_AS(load_pairs(dup), DuplicateId);
}

TEST_CASE("save_pairs round-trips bit for bit") {
  oracles::Rng rng(601);
  PosePairSet set;
  set.units = Units::mm;
  for (int i = 0; i < 100; ++i) {
    set.records.push_back({"r" + std::to_string(i),
                           oracles::rand_pose(rng),
                           oracles::rand_pose(rng)});
  }
  const std::string path = temp_file("ds_roundtrip.csv").string();
  save_pairs(set, path);
  const PosePairSet back = load_pairs(path);
  CHECK(back.units == set.units);
  REQUIRE(back.records.size() == set.records.size());
  for (size_t i = 0; i < set.records.size(); ++i) {
    CHECK(back.records[i].id == set.records[i].id);
    CHECK(back.records[i].truth.vec() == set.records[i].truth.vec());
    CHECK(back.records[i].pred.vec() == set.records[i].pred.vec());
  }
}

TEST_CASE("load_metric") {
  const std::string diag =
      write_file("ds_diag.csv", "# weights\n0.25 1 1, 1 1 1\n");
  CHECK(load_metric(diag).matrix() ==
        Mat6((Vec6() << 0.25, 1, 1, 1, 1, 1).finished().asDiagonal()));

  std::string full_text;
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 6; ++j) {
      full_text += (j ? " " : "");
      full_text += (i == j) ? "2" : "0";
    }
    full_text += "\n";
  }
  const std::string full = write_file("ds_full.csv", full_text);
  CHECK(load_metric(full).matrix() == Mat6(2.0 * Mat6::Identity()));

  const std::string two_rows =
      write_file("ds_tworow.csv", "1 1 1 1 1 1\n1 1 1 1 1 1\n");
  CHECK_THROWS_AS(load_metric(two_rows), ParseError);

  const std::string short_r = write_file("ds_shortrow.csv", "1 1 1 1 1\n");
  CHECK_THROWS_AS(load_metric(short_r), ParseError);

  const std::string neg = write_file("ds_negw.csv", "1 1 -1 1 1 1\n");
  CHECK_THROWS_AS(load_metric(neg), NonPositiveWeight);

  std::string asym_text = full_text;
  asym_text[2] = '9';  // breaks symmetry of the 6-row matrix
  const std::string asym = write_file("ds_asym.csv", asym_text);
  CHECK_THROWS_AS(load_metric(asym), NotSPD);
}

TEST_CASE("load_scalars") {
  const std::string path = write_file("ds_scalars.csv",
                                      "# measured\n"
                                      "1.5, 2.5\n"
                                      "\n"
                                      "3.5 -4\n");
  const std::vector<double> v = load_scalars(path);
  REQUIRE(v.size() == 4);
  CHECK(v[0] == 1.5);
  CHECK(v[1] == 2.5);
  CHECK(v[2] == 3.5);
  CHECK(v[3] == -4.0);

  const std::string bad = write_file("ds_scalbad.csv", "1.5 x\n");
  CHECK_THROWS_AS(load_scalars(bad), ParseError);
}

TEST_CASE("parse_pose_literal") {
  const Pose6 p = parse_pose_literal("0.1,-0.2,0.3,1,2,3");
  CHECK(p.vec() == (Vec6() << 0.1, -0.2, 0.3, 1, 2, 3).finished());
  CHECK_THROWS_AS(parse_pose_literal("1,2,3,4,5"), ParseError);
  CHECK_THROWS_AS(parse_pose_literal("1,2,3,4,5,six"), ParseError);
}

TEST_CASE("save_weights") {
  Vec6 w;
  w << 0.25, 1, 1, 1, 1, 1e-3;
  const std::string bare = temp_file("ds_weights.txt").string();
  save_weights(w, bare, false);
  {
    std::ifstream in(bare);
    std::string first;
    std::getline(in, first);
    CHECK(first.rfind("#", 0) != 0);
  }
  CHECK(load_metric(bare).matrix() == Mat6(w.asDiagonal()));

  const std::string stamped = temp_file("ds_weights_ts.txt").string();
  save_weights(w, stamped, true);
  {
    std::ifstream in(stamped);
    std::string first;
    std::getline(in, first);
    CHECK(first.rfind("# generated ", 0) == 0);
  }
  CHECK(load_metric(stamped).matrix() == Mat6(w.asDiagonal()));
}
