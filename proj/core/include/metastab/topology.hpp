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
#include <vector>

#include "metastab/landscape.hpp"
#include "metastab/types.hpp"

namespace metastab {

enum class CriticalKind { kMinimum, kSaddle, kHigherIndex };

std::string_view to_string(CriticalKind kind);

struct CriticalPoint {
  Vector x;
  CriticalKind kind = CriticalKind::kMinimum;
  int morse_index = 0;
  double value = 0.0;
  Matrix hessian;
  Vector hessian_eigs;  ///< ascending
  Matrix ell_jac;       ///< D ell(x)
};

/// Classifies x as a critical point. Throws kDegenerateCriticalPoint when
/// |det Hess U(x)| < 1e-8.
CriticalPoint classify_critical_point(const LandscapeSpec& spec, const Vector& x);

/// Newton iteration on grad U = 0 from a seeds_per_axis^d grid of seeds in
/// the box. Divergent seeds are dropped; converged points are deduplicated
/// at radius 1e-6 diam(box), classified, and returned sorted by value.
std::vector<CriticalPoint> find_critical_points(const LandscapeSpec& spec, const Box& box,
                                                int seeds_per_axis = 8);

/// Index of the critical point nearest to x.
std::size_t nearest_critical_point(const std::vector<CriticalPoint>& crits, const Vector& x);

/// A saddle on the common boundary of the home valley and another component.
struct Gate {
  CriticalPoint saddle;
  Vector e1;               ///< unstable Hessian direction, pointing into the home valley
  int far_component = -1;  ///< label of the component on the other side
};

struct ValleyStructure {
  double level = 0.0;            ///< H actually used (after tie shifts)
  double requested_level = 0.0;  ///< H as requested
  double level_tolerance = 0.0;  ///< grid tolerance for |U(sigma) - H|
  CriticalPoint start;
  std::vector<Gate> gates;                  ///< Sigma_0
  std::vector<CriticalPoint> minima_home;   ///< M_0
  std::vector<CriticalPoint> minima_far;    ///< M_1
  std::vector<int> far_components;          ///< component label per minima_far entry
  std::vector<CriticalPoint> deepest_home;  ///< M_0^*
  double h0 = 0.0;
  int home_component = -1;
  int n_components = 0;
  Box box;
  std::vector<int> cells_per_axis;
  Vector spacing;
  std::vector<std::string> warnings;
};

/// Default flood-fill resolution: 4000 (d = 1), 400 (d = 2), 96 (d = 3).
int default_cells_per_axis(int dim);

/// Level-H valley structure by flood fill of {U < H} on a uniform grid
/// (d <= 3). cells_per_axis <= 0 selects the default.
///
/// Throws kInconsistentLevel when H <= U(m0) or m0 is not in the sublevel
/// set, kGateNotFound when no index-1 saddle at level H joins the home
/// valley to another component.
ValleyStructure build_valley_structure(const LandscapeSpec& spec, const std::vector<CriticalPoint>& crits,
                                       const CriticalPoint& m0, double level, const Box& box,
                                       int cells_per_axis = 0);

/// Smallest saddle value H above U(m0) at which every target minimum lies
/// in M_1 behind a non-empty gate set. Targets are matched to the nearest
/// located minima. Throws kUnreachableTarget when no saddle value works.
double auto_gate_level(const LandscapeSpec& spec, const std::vector<CriticalPoint>& crits,
                       const CriticalPoint& m0, const std::vector<Vector>& targets, const Box& box,
                       int cells_per_axis = 0);

}  // namespace metastab
