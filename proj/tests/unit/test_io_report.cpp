// Copyright 2026 The metastab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "metastab/catalog.hpp"
#include "metastab/errors.hpp"
#include "metastab/io.hpp"
#include "metastab/kramers.hpp"
#include "metastab/report.hpp"

namespace metastab {
namespace {

using io::json;

std::string config_message(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kConfig);
    return e.what();
  }
  ADD_FAILURE() << "expected a configuration error";
  return {};
}

int count_lines(const std::string& s) { return static_cast<int>(std::count(s.begin(), s.end(), '\n')); }

TEST(ParseJson, ReportsLineAndColumn) {
  const std::string msg = config_message([] { io::parse_json_text("{\n  \"a\": 1,\n  \"b\": ]\n}", "cfg.json"); });
  EXPECT_NE(msg.find("cfg.json:3:"), std::string::npos) << msg;
}

TEST(ParseJson, MissingFile) {
  const std::string msg = config_message([] { io::read_json_file("/nonexistent/metastab.json"); });
  EXPECT_NE(msg.find("/nonexistent/metastab.json"), std::string::npos);
}

TEST(Fields, MissingAndMistypedNamesThePath) {
  const json j = json::parse(R"({"x": "text"})");
  EXPECT_NE(config_message([&] { io::get_double(j, "y", "root"); }).find("root.y"), std::string::npos);
  EXPECT_NE(config_message([&] { io::get_double(j, "x", "root"); }).find("root.x"), std::string::npos);
  EXPECT_EQ(io::get_double_or(j, "y", "root", 2.5), 2.5);
}

TEST(Fields, VectorsMatricesAndBoxes) {
  EXPECT_EQ(io::vector_from_json(json::parse("[1, -2.5]"), "v"), (Vector{{1.0, -2.5}}));
  const Matrix m = io::matrix_from_json(json::parse("[[0, 1], [-1, 0]]"), "m");
  EXPECT_EQ(m(0, 1), 1.0);
  EXPECT_EQ(m(1, 0), -1.0);
  config_message([] { io::matrix_from_json(json::parse("[[0, 1], [-1]]"), "m"); });
  config_message([] { io::vector_from_json(json::parse("[1, \"a\"]"), "v"); });
  const Box b = io::box_from_json(json::parse("[[-2, 2], [-1, 3]]"), "box");
  EXPECT_EQ(b.lo, (Vector{{-2.0, -1.0}}));
  EXPECT_EQ(b.hi, (Vector{{2.0, 3.0}}));
  config_message([] { io::box_from_json(json::parse("[[2, -2]]"), "box"); });
  EXPECT_EQ(io::to_json(b), json::parse("[[-2, 2], [-1, 3]]"));
}

TEST(Landscape, BuiltinWithConstantSkew) {
  const auto spec = io::landscape_from_json(json::parse(R"({
    "potential": {"kind": "builtin", "name": "doublewell2d"},
    "skew": {"kind": "constant", "entries": [[0, 1], [-1, 0]]}})"));
  EXPECT_EQ(spec.dim(), 2);
  EXPECT_EQ(spec.name(), "doublewell2d");
  const auto ref = builtin_landscape("doublewell2d", planar_rotation_skew(1.0));
  const Vector x{{0.3, -0.7}};
  EXPECT_EQ(spec.value(x), ref.value(x));
  EXPECT_EQ(eval_ell(spec, x), eval_ell(ref, x));
}

TEST(Landscape, PolynomialMatchesBuiltin) {
  const auto spec = io::landscape_from_json(json::parse(R"({
    "name": "poly",
    "potential": {"kind": "polynomial",
                  "terms": [[0.25, [4, 0]], [-0.5, [2, 0]], [0.25, [0, 0]], [0.5, [0, 2]]]}})"));
  const auto ref = builtin_landscape("doublewell2d");
  for (const Vector& x : {Vector{{0.3, -0.7}}, Vector{{-1.2, 0.4}}}) {
    EXPECT_NEAR(spec.value(x), ref.value(x), 1e-15);
    EXPECT_LE((spec.gradient(x) - ref.gradient(x)).norm(), 1e-15);
  }
  EXPECT_EQ(spec.name(), "poly");
}

TEST(Landscape, ScalarPolySkewAndErrors) {
  const auto spec = io::landscape_from_json(json::parse(R"({
    "potential": {"kind": "builtin", "name": "doublewell2d"},
    "skew": {"kind": "scalar_poly", "entries": [[0, 1], [-1, 0]], "coefficients": [1, 2]}})"));
  const Vector x{{0.5, 0.5}};
  const double u = spec.value(x);
  const Vector g = spec.gradient(x);
  EXPECT_NEAR(eval_ell(spec, x)[0], (1 + 2 * u) * g[1], 1e-15);

  config_message([] { io::landscape_from_json(json::parse(R"({"potential": {"kind": "spline"}})")); });
  config_message([] {
    io::landscape_from_json(json::parse(R"({"potential": {"kind": "builtin", "name": "doublewell2d"}, "dim": 3})"));
  });
  config_message([] {
    io::landscape_from_json(json::parse(
        R"({"potential": {"kind": "builtin", "name": "doublewell2d"}, "skew": {"kind": "constant", "entries": [[0]]}})"));
  });
  config_message([] {
    io::landscape_from_json(json::parse(R"({"potential": {"kind": "polynomial", "terms": [[1, [2, 0]], [1, [2]]]}})"));
  });
}

TEST(FormatDouble, RoundTripsAndSpecials) {
  for (double x : {0.1, 1.0 / 3.0, 1e-300, -2.5e17, 0.22507907903927651}) {
    EXPECT_EQ(std::stod(report::format_double(x)), x);
  }
  EXPECT_EQ(report::format_double(std::numeric_limits<double>::quiet_NaN()), "nan");
  EXPECT_EQ(report::format_double(std::numeric_limits<double>::infinity()), "inf");
  EXPECT_EQ(report::format_double(-std::numeric_limits<double>::infinity()), "-inf");
  EXPECT_EQ(report::format_double(0.5), "0.5");
}

TEST(Csv, Ensemble) {
  EnsembleResult r;
  r.trajectories = {{1.5, false, 11, 0}, {2.0, true, 12, -1}};
  const std::string csv = report::ensemble_csv(r);
  EXPECT_EQ(csv, "index,seed,hitting_time,censored\n0,11,1.5,0\n1,12,2,1\n");
}

TEST(Csv, Boundary) {
  BoundaryTable t;
  t.rows = {{1e-3, 2.0, 0.5, 1.25, 1.2}};
  EXPECT_EQ(report::boundary_csv(t), "epsilon,I1,I2,I1_minus_I2,alpha_omega,ratio\n0.001,2,0.5,1.5,1.25,1.2\n");
}

TEST(Csv, CriticalPointsAndPrediction) {
  const auto spec = builtin_landscape("doublewell2d");
  const Box& box = builtin_entry("doublewell2d").box;
  const auto crits = find_critical_points(spec, box);
  const std::string csv = report::critical_points_csv(crits);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "x1,x2,kind,morse_index,value");
  EXPECT_EQ(count_lines(csv), 1 + static_cast<int>(crits.size()));

  const auto& m0 = crits[nearest_critical_point(crits, Vector{{-1.0, 0.0}})];
  const auto vs = build_valley_structure(spec, crits, m0, 0.25, box);
  const auto p = predict(vs, spec, {0.15, 0.1});
  const std::string pcsv = report::prediction_csv(p);
  EXPECT_EQ(count_lines(pcsv), 3);
  EXPECT_EQ(pcsv.substr(0, pcsv.find('\n')), "epsilon,predicted,predicted_rev,speedup,error_band_heuristic");
}

TEST(Json, ReportsAreStructured) {
  const auto spec = builtin_landscape("doublewell2d", planar_rotation_skew(1.0));
  const Box& box = builtin_entry("doublewell2d").box;
  const auto crits = find_critical_points(spec, box);
  const auto& m0 = crits[nearest_critical_point(crits, Vector{{-1.0, 0.0}})];
  const auto vs = build_valley_structure(spec, crits, m0, 0.25, box);
  const json jv = report::to_json(vs);
  EXPECT_TRUE(jv.is_object());
  const json jp = report::to_json(predict(vs, spec, {0.1}));
  EXPECT_TRUE(jp.contains("speedup"));
  EXPECT_NEAR(jp["speedup"].get<double>(), std::sqrt(2.0), 1e-12);

  EnsembleResult r;
  r.trajectories = {{1.5, false, 11, 0}};
  r.mean = 1.5;
  EXPECT_TRUE(report::to_json(r, true).contains("trajectories"));
  EXPECT_FALSE(report::to_json(r, false).contains("trajectories"));
}

}  // namespace
}  // namespace metastab
