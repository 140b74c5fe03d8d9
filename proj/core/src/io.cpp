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

#include "metastab/io.hpp"

#include <fstream>
#include <sstream>

#include "metastab/catalog.hpp"
#include "metastab/errors.hpp"

namespace metastab::io {
namespace {

std::string join(std::string_view path, std::string_view key) {
  if (path.empty()) return std::string(key);
  return std::string(path) + "." + std::string(key);
}

[[noreturn]] void fail(std::string_view path, const std::string& msg) {
  throw Error(ErrorCode::kConfig, "field '" + std::string(path) + "': " + msg);
}

}  // namespace

const json& require(const json& obj, std::string_view key, std::string_view path) {
  if (!obj.is_object()) fail(path, "expected an object");
  auto it = obj.find(std::string(key));
  if (it == obj.end()) fail(join(path, key), "missing");
  return *it;
}

double get_double(const json& obj, std::string_view key, std::string_view path) {
  const json& v = require(obj, key, path);
  if (!v.is_number()) fail(join(path, key), "expected a number");
  return v.get<double>();
}

double get_double_or(const json& obj, std::string_view key, std::string_view path, double fallback) {
  if (!obj.is_object() || !obj.contains(std::string(key))) return fallback;
  return get_double(obj, key, path);
}

long long get_int(const json& obj, std::string_view key, std::string_view path) {
  const json& v = require(obj, key, path);
  if (!v.is_number_integer()) fail(join(path, key), "expected an integer");
  return v.get<long long>();
}

std::string get_string(const json& obj, std::string_view key, std::string_view path) {
  const json& v = require(obj, key, path);
  if (!v.is_string()) fail(join(path, key), "expected a string");
  return v.get<std::string>();
}

Vector vector_from_json(const json& j, std::string_view path) {
  if (!j.is_array() || j.empty()) fail(path, "expected a non-empty array of numbers");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) fail(std::string(path) + "[" + std::to_string(i) + "]", "expected a number");
    v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
  }
  return v;
}

Matrix matrix_from_json(const json& j, std::string_view path) {
  if (!j.is_array() || j.empty()) fail(path, "expected a non-empty array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  Matrix m;
  for (Eigen::Index r = 0; r < rows; ++r) {
    const Vector row = vector_from_json(j[static_cast<std::size_t>(r)], std::string(path) + "[" + std::to_string(r) + "]");
    if (r == 0) m.resize(rows, row.size());
    if (row.size() != m.cols()) fail(path, "ragged matrix rows");
    m.row(r) = row.transpose();
  }
  return m;
}

Box box_from_json(const json& j, std::string_view path) {
  if (!j.is_array() || j.empty()) fail(path, "expected [[lo, hi], ...]");
  Box b{Vector(static_cast<Eigen::Index>(j.size())), Vector(static_cast<Eigen::Index>(j.size()))};
  for (std::size_t i = 0; i < j.size(); ++i) {
    const Vector r = vector_from_json(j[i], std::string(path) + "[" + std::to_string(i) + "]");
    if (r.size() != 2 || !(r[0] < r[1])) fail(std::string(path) + "[" + std::to_string(i) + "]", "expected [lo, hi] with lo < hi");
    b.lo[static_cast<Eigen::Index>(i)] = r[0];
    b.hi[static_cast<Eigen::Index>(i)] = r[1];
  }
  return b;
}

json to_json(const Vector& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

json to_json(const Matrix& m) {
  json a = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    a.push_back(std::move(row));
  }
  return a;
}

json to_json(const Box& b) {
  json a = json::array();
  for (Eigen::Index i = 0; i < b.lo.size(); ++i) a.push_back(json::array({b.lo[i], b.hi[i]}));
  return a;
}

namespace {

std::shared_ptr<const Potential> potential_from_json(const json& j, std::string_view path, std::string& builtin_name) {
  const std::string kind = get_string(j, "kind", path);
  if (kind == "builtin") {
    builtin_name = get_string(j, "name", path);
    return builtin_entry(builtin_name).potential;
  }
  if (kind == "polynomial") {
    const json& terms = require(j, "terms", path);
    const std::string tpath = join(path, "terms");
    if (!terms.is_array() || terms.empty()) fail(tpath, "expected a non-empty list of [coefficient, exponents]");
    std::vector<PolynomialPotential::Term> out;
    int dim = -1;
    for (std::size_t i = 0; i < terms.size(); ++i) {
      const std::string ip = tpath + "[" + std::to_string(i) + "]";
      const json& t = terms[i];
      if (!t.is_array() || t.size() != 2 || !t[0].is_number() || !t[1].is_array())
        fail(ip, "expected [coefficient, [exponents...]]");
      PolynomialPotential::Term term{t[0].get<double>(), {}};
      for (const auto& e : t[1]) {
        if (!e.is_number_integer() || e.get<int>() < 0) fail(ip, "exponents must be non-negative integers");
        term.exponents.push_back(e.get<int>());
      }
      if (dim < 0) dim = static_cast<int>(term.exponents.size());
      if (dim != static_cast<int>(term.exponents.size()) || dim == 0) fail(ip, "inconsistent exponent-vector length");
      out.push_back(std::move(term));
    }
    return std::make_shared<PolynomialPotential>(dim, std::move(out));
  }
  fail(join(path, "kind"), "unknown potential kind '" + kind + "' (expected builtin or polynomial)");
}

std::shared_ptr<const SkewGenerator> skew_from_json(const json& j, std::string_view path, int dim) {
  const std::string kind = get_string(j, "kind", path);
  if (kind == "none") return zero_skew(dim);
  if (kind != "constant" && kind != "scalar_poly")
    fail(join(path, "kind"), "unknown skew kind '" + kind + "' (expected constant, scalar_poly or none)");
  Matrix base = matrix_from_json(require(j, "entries", path), join(path, "entries"));
  if (base.rows() != dim || base.cols() != dim)
    fail(join(path, "entries"), "expected a " + std::to_string(dim) + "x" + std::to_string(dim) + " matrix");
  if (kind == "constant") return constant_skew(std::move(base));
  const Vector c = vector_from_json(require(j, "coefficients", path), join(path, "coefficients"));
  return std::make_shared<ScalarPolySkew>(std::move(base), std::vector<double>(c.data(), c.data() + c.size()));
}

}  // namespace

LandscapeSpec landscape_from_json(const json& j, std::string_view path) {
  if (!j.is_object()) fail(path, "expected an object");
  std::string builtin_name;
  auto potential = potential_from_json(require(j, "potential", path), join(path, "potential"), builtin_name);
  const int dim = potential->dim();
  if (j.contains("dim")) {
    const long long declared = get_int(j, "dim", path);
    if (declared != dim)
      fail(join(path, "dim"), "declared " + std::to_string(declared) + " but potential has dimension " + std::to_string(dim));
  }
  std::string name = j.contains("name") ? get_string(j, "name", path) : builtin_name;
  if (name.empty()) name = "landscape";
  std::shared_ptr<const SkewGenerator> skew =
      j.contains("skew") ? skew_from_json(j.at("skew"), join(path, "skew"), dim) : zero_skew(dim);
  return LandscapeSpec(std::move(name), std::move(potential), std::move(skew));
}

json parse_json_text(const std::string& text, std::string_view origin) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // Translate the byte offset into line/column.
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw Error(ErrorCode::kConfig, std::string(origin) + ":" + std::to_string(line) + ":" + std::to_string(col) +
                                        ": JSON parse error: " + e.what());
  }
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kConfig, "cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_json_text(ss.str(), path);
}

}  // namespace metastab::io
