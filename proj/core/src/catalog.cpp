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

#include "metastab/catalog.hpp"

#include <algorithm>
#include <utility>

#include "metastab/errors.hpp"

namespace metastab {
namespace {

using Term = PolynomialPotential::Term;

Box make_box(std::initializer_list<std::pair<double, double>> ranges) {
  Box b{Vector(static_cast<Eigen::Index>(ranges.size())), Vector(static_cast<Eigen::Index>(ranges.size()))};
  Eigen::Index i = 0;
  for (const auto& [lo, hi] : ranges) {
    b.lo[i] = lo;
    b.hi[i] = hi;
    ++i;
  }
  return b;
}

std::vector<CatalogEntry> build_catalog() {
  std::vector<CatalogEntry> c;
  c.push_back({"doublewell1d",
               std::make_shared<PolynomialPotential>(
                   1, std::vector<Term>{{0.25, {4}}, {-0.5, {2}}, {0.25, {0}}}),
               make_box({{-2.0, 2.0}})});
  c.push_back({"doublewell2d",
               std::make_shared<PolynomialPotential>(
                   2, std::vector<Term>{{0.25, {4, 0}}, {-0.5, {2, 0}}, {0.25, {0, 0}}, {0.5, {0, 2}}}),
               make_box({{-2.0, 2.0}, {-2.0, 2.0}})});
  c.push_back({"triplewell2d",
               std::make_shared<PolynomialPotential>(
                   2, std::vector<Term>{{1.0 / 6.0, {6, 0}},
                                        {-1.25, {4, 0}},
                                        {0.2, {3, 0}},
                                        {2.0, {2, 0}},
                                        {0.3, {1, 0}},
                                        {0.5, {0, 2}},
                                        {0.05, {2, 2}}}),
               make_box({{-2.8, 2.6}, {-2.0, 2.0}})});
  c.push_back({"quadratic2d",
               std::make_shared<PolynomialPotential>(2, std::vector<Term>{{0.5, {2, 0}}, {0.5, {0, 2}}}),
               make_box({{-2.0, 2.0}, {-2.0, 2.0}})});
  return c;
}

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> c = build_catalog();
  return c;
}

}  // namespace

std::vector<std::string> builtin_names() {
  std::vector<std::string> names;
  for (const auto& e : catalog()) names.push_back(e.name);
  return names;
}

const CatalogEntry& builtin_entry(std::string_view name) {
  const auto& c = catalog();
  auto it = std::find_if(c.begin(), c.end(), [&](const CatalogEntry& e) { return e.name == name; });
  if (it == c.end()) throw Error(ErrorCode::kConfig, "unknown builtin potential '" + std::string(name) + "'");
  return *it;
}

LandscapeSpec builtin_landscape(std::string_view name, std::shared_ptr<const SkewGenerator> skew) {
  const auto& e = builtin_entry(name);
  return LandscapeSpec(e.name, e.potential, std::move(skew));
}

}  // namespace metastab
