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

#include <cmath>

#include <gtest/gtest.h>

#include "metastab/catalog.hpp"
#include "metastab/errors.hpp"
#include "metastab/spectral.hpp"
#include "metastab/topology.hpp"

namespace metastab {
namespace {

template <class F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kConfig;
}

LandscapeSpec dw2(double a = 1.0) { return builtin_landscape("doublewell2d", planar_rotation_skew(a)); }
const Box& dw2_box() { return builtin_entry("doublewell2d").box; }

const CriticalPoint& at(const std::vector<CriticalPoint>& crits, const Vector& x) {
  return crits[nearest_critical_point(crits, x)];
}

TEST(FindCriticalPoints, DoubleWell2d) {
  const auto crits = find_critical_points(dw2(), dw2_box());
  ASSERT_EQ(crits.size(), 3u);
  const auto& left = at(crits, Vector{{-1.0, 0.0}});
  const auto& right = at(crits, Vector{{1.0, 0.0}});
  const auto& mid = at(crits, Vector{{0.0, 0.0}});
  EXPECT_EQ(left.kind, CriticalKind::kMinimum);
  EXPECT_EQ(right.kind, CriticalKind::kMinimum);
  EXPECT_EQ(mid.kind, CriticalKind::kSaddle);
  EXPECT_EQ(mid.morse_index, 1);
  EXPECT_LE((left.x - Vector{{-1.0, 0.0}}).norm(), 1e-12);
  EXPECT_NEAR(mid.value, 0.25, 1e-15);
  for (const auto& c : crits) EXPECT_LE(dw2().gradient(c.x).norm(), 1e-9);
}

TEST(FindCriticalPoints, DoubleWell1d) {
  const auto spec = builtin_landscape("doublewell1d");
  const auto crits = find_critical_points(spec, builtin_entry("doublewell1d").box);
  ASSERT_EQ(crits.size(), 3u);
  EXPECT_EQ(at(crits, Vector{{0.0}}).kind, CriticalKind::kSaddle);
  EXPECT_EQ(at(crits, Vector{{-1.0}}).kind, CriticalKind::kMinimum);
  EXPECT_EQ(at(crits, Vector{{1.0}}).kind, CriticalKind::kMinimum);
}

TEST(FindCriticalPoints, QuadraticHasSingleMinimum) {
  const auto crits = find_critical_points(builtin_landscape("quadratic2d"), builtin_entry("quadratic2d").box);
  ASSERT_EQ(crits.size(), 1u);
  EXPECT_EQ(crits[0].kind, CriticalKind::kMinimum);
  EXPECT_LE(crits[0].x.norm(), 1e-12);
}

TEST(FindCriticalPoints, SeedCountContract) {
  EXPECT_EQ(code_of([] { find_critical_points(dw2(), dw2_box(), 3); }), ErrorCode::kContractViolation);
}

TEST(FindCriticalPoints, DegenerateMinimumIsReported) {
  auto quartic = std::make_shared<PolynomialPotential>(1, std::vector<PolynomialPotential::Term>{{1.0, {4}}});
  const LandscapeSpec spec("quartic", quartic, nullptr);
  EXPECT_EQ(code_of([&] { classify_critical_point(spec, Vector{{0.0}}); }), ErrorCode::kDegenerateCriticalPoint);
  EXPECT_EQ(code_of([&] { find_critical_points(spec, Box{Vector{{-1.0}}, Vector{{1.0}}}); }),
            ErrorCode::kDegenerateCriticalPoint);
}

TEST(Classification, StabilityMatchesMorseIndex) {
  for (const char* name : {"doublewell2d", "triplewell2d"}) {
    const auto spec = builtin_landscape(name, planar_rotation_skew(0.8));
    for (const auto& c : find_critical_points(spec, builtin_entry(name).box)) {
      const Matrix m = c.hessian + c.ell_jac;
      const auto eigs = snap_real(real_eigenvalues(m), std::max(1.0, m.norm()));
      if (c.kind == CriticalKind::kMinimum) {
        EXPECT_EQ(count_negative_real_part(eigs), 0) << name;
      }
      if (c.kind == CriticalKind::kSaddle) {
        EXPECT_EQ(count_negative_real_part(eigs), 1) << name;
      }
      EXPECT_LE(eval_ell(spec, c.x).norm(), 1e-8);
    }
  }
}

TEST(ValleyStructure, DoubleWell2d) {
  const auto spec = dw2();
  const auto crits = find_critical_points(spec, dw2_box());
  const auto& m0 = at(crits, Vector{{-1.0, 0.0}});
  const auto vs = build_valley_structure(spec, crits, m0, 0.25, dw2_box());
  ASSERT_EQ(vs.gates.size(), 1u);
  EXPECT_LE(vs.gates[0].saddle.x.norm(), 1e-12);
  EXPECT_LT(vs.gates[0].e1[0], 0.0);  // points into the home valley
  EXPECT_EQ(vs.h0, 0.0);
  ASSERT_EQ(vs.deepest_home.size(), 1u);
  EXPECT_LE((vs.deepest_home[0].x - Vector{{-1.0, 0.0}}).norm(), 1e-12);
  ASSERT_EQ(vs.minima_far.size(), 1u);
  EXPECT_LE((vs.minima_far[0].x - Vector{{1.0, 0.0}}).norm(), 1e-12);
  EXPECT_EQ(vs.minima_home.size(), 1u);
  EXPECT_EQ(vs.n_components, 2);
  EXPECT_LE(std::abs(vs.gates[0].saddle.value - vs.level), vs.level_tolerance);
}

TEST(ValleyStructure, LevelBelowStartIsInconsistent) {
  const auto spec = dw2();
  const auto crits = find_critical_points(spec, dw2_box());
  const auto& m0 = at(crits, Vector{{-1.0, 0.0}});
  EXPECT_EQ(code_of([&] { build_valley_structure(spec, crits, m0, -0.1, dw2_box()); }),
            ErrorCode::kInconsistentLevel);
}

TEST(ValleyStructure, NoGateAtNonSaddleLevel) {
  const auto spec = dw2();
  const auto crits = find_critical_points(spec, dw2_box());
  const auto& m0 = at(crits, Vector{{-1.0, 0.0}});
  EXPECT_EQ(code_of([&] { build_valley_structure(spec, crits, m0, 0.1, dw2_box()); }), ErrorCode::kGateNotFound);
  EXPECT_EQ(code_of([&] { build_valley_structure(spec, crits, m0, 1.0, dw2_box()); }), ErrorCode::kGateNotFound);
}

TEST(ValleyStructure, TripleWellLowerGate) {
  const auto spec = builtin_landscape("triplewell2d", planar_rotation_skew(0.5));
  const Box& box = builtin_entry("triplewell2d").box;
  const auto crits = find_critical_points(spec, box);
  const auto& m0 = at(crits, Vector{{-2.1, 0.0}});
  const auto& lower = at(crits, Vector{{-0.857, 0.0}});
  ASSERT_EQ(lower.kind, CriticalKind::kSaddle);
  const auto vs = build_valley_structure(spec, crits, m0, lower.value, box);
  ASSERT_EQ(vs.gates.size(), 1u);
  EXPECT_LE((vs.gates[0].saddle.x - lower.x).norm(), 1e-12);
  ASSERT_EQ(vs.minima_far.size(), 1u);  // only the middle well is behind the lower gate
  EXPECT_NEAR(vs.minima_far[0].x[0], -0.076, 5e-3);
}

TEST(ValleyStructure, GridRefinementIsStable) {
  const auto spec = builtin_landscape("triplewell2d", planar_rotation_skew(0.5));
  const Box& box = builtin_entry("triplewell2d").box;
  const auto crits = find_critical_points(spec, box);
  const auto& m0 = at(crits, Vector{{-2.1, 0.0}});
  for (const auto& c : crits) {
    if (c.kind != CriticalKind::kSaddle) continue;
    const auto coarse = build_valley_structure(spec, crits, m0, c.value, box, 200);
    const auto fine = build_valley_structure(spec, crits, m0, c.value, box, 400);
    ASSERT_EQ(coarse.gates.size(), fine.gates.size());
    for (std::size_t i = 0; i < coarse.gates.size(); ++i)
      EXPECT_LE((coarse.gates[i].saddle.x - fine.gates[i].saddle.x).norm(), 1e-12);
    ASSERT_EQ(coarse.minima_far.size(), fine.minima_far.size());
    for (std::size_t i = 0; i < coarse.minima_far.size(); ++i)
      EXPECT_LE((coarse.minima_far[i].x - fine.minima_far[i].x).norm(), 1e-12);
    EXPECT_EQ(coarse.minima_home.size(), fine.minima_home.size());
  }
}

TEST(AutoGateLevel, DoubleWell) {
  const auto spec = dw2();
  const auto crits = find_critical_points(spec, dw2_box());
  const auto& m0 = at(crits, Vector{{-1.0, 0.0}});
  EXPECT_NEAR(auto_gate_level(spec, crits, m0, {Vector{{1.0, 0.0}}}, dw2_box()), 0.25, 1e-15);
}

TEST(AutoGateLevel, TripleWellFarTargetNeedsUpperGate) {
  const auto spec = builtin_landscape("triplewell2d", planar_rotation_skew(0.5));
  const Box& box = builtin_entry("triplewell2d").box;
  const auto crits = find_critical_points(spec, box);
  const auto& m0 = at(crits, Vector{{-2.1, 0.0}});
  const auto& upper = at(crits, Vector{{1.168, 0.0}});
  const double h = auto_gate_level(spec, crits, m0, {Vector{{1.867, 0.0}}}, box);
  EXPECT_NEAR(h, upper.value, 1e-8);
  const double middle = auto_gate_level(spec, crits, m0, {Vector{{-0.076, 0.0}}}, box);
  EXPECT_NEAR(middle, at(crits, Vector{{-0.857, 0.0}}).value, 1e-8);
}

TEST(AutoGateLevel, TargetInHomeComponentIsUnreachable) {
  const auto spec = dw2();
  const auto crits = find_critical_points(spec, dw2_box());
  const auto& m0 = at(crits, Vector{{-1.0, 0.0}});
  EXPECT_EQ(code_of([&] { auto_gate_level(spec, crits, m0, {Vector{{-1.0, 0.0}}}, dw2_box()); }),
            ErrorCode::kUnreachableTarget);
}

}  // namespace
}  // namespace metastab
