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

#pragma once

#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "metastab/landscape.hpp"
#include "metastab/types.hpp"

namespace metastab::io {

using nlohmann::json;

// Field accessors that throw Error(kConfig) naming the offending path.
const json& require(const json& obj, std::string_view key, std::string_view path);
double get_double(const json& obj, std::string_view key, std::string_view path);
double get_double_or(const json& obj, std::string_view key, std::string_view path, double fallback);
long long get_int(const json& obj, std::string_view key, std::string_view path);
std::string get_string(const json& obj, std::string_view key, std::string_view path);

Vector vector_from_json(const json& j, std::string_view path);
Matrix matrix_from_json(const json& j, std::string_view path);
/// [[lo_1, hi_1], ..., [lo_d, hi_d]]
Box box_from_json(const json& j, std::string_view path);

json to_json(const Vector& v);
/// Row-major nested arrays.
json to_json(const Matrix& m);
json to_json(const Box& b);

/// Landscape document:
///   {"name": ..., "dim": d,
///    "potential": {"kind": "builtin", "name": "doublewell2d"}
///              | {"kind": "polynomial", "terms": [[c, [k_1, ..., k_d]], ...]},
///    "skew": {"kind": "constant", "entries": [[...], ...]}
///          | {"kind": "scalar_poly", "entries": [[...]], "coefficients": [c0, c1, ...]}
///          | {"kind": "none"}}
/// "skew" may be omitted (reversible). "dim" must agree with the potential.
LandscapeSpec landscape_from_json(const json& j, std::string_view path = "landscape");

/// Parses text, reporting line/column on syntax errors.
json parse_json_text(const std::string& text, std::string_view origin);
json read_json_file(const std::string& path);

}  // namespace metastab::io
