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

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "metastab/landscape.hpp"

namespace metastab {

/// Bundled potentials:
///
///   doublewell1d  U(x)   = (x^2 - 1)^2 / 4
///   doublewell2d  U(x,y) = (x^2 - 1)^2 / 4 + y^2 / 2
///   triplewell2d  U(x,y) = x^6/6 - 5x^4/4 + x^3/5 + 2x^2 + 3x/10
///                          + y^2/2 + x^2 y^2 / 20
///   quadratic2d   U(x,y) = (x^2 + y^2) / 2
///
/// triplewell2d has minima near x = -2.100 (U = -3.678), x = -0.076
/// (U = -0.011) and x = 1.867 (U = 0.704) on the axis y = 0, separated by
/// saddles near x = -0.857 (U = 0.478) and x = 1.168 (U = 1.494). The right
/// minimum sits above the left saddle, so from the left well the middle
/// well is reached through the lower gate and the right well only through
/// the upper one.
struct CatalogEntry {
  std::string name;
  std::shared_ptr<const Potential> potential;
  /// Box that contains every critical point with margin.
  Box box;
};

std::vector<std::string> builtin_names();
const CatalogEntry& builtin_entry(std::string_view name);

/// Builtin potential with the given skew generator (zero when null).
LandscapeSpec builtin_landscape(std::string_view name,
                                std::shared_ptr<const SkewGenerator> skew = nullptr);

}  // namespace metastab
