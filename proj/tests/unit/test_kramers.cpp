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
#include <numbers>

#include <gtest/gtest.h>

#include "metastab/catalog.hpp"
#include "metastab/errors.hpp"
#include "metastab/kramers.hpp"

namespace metastab {
namespace {

constexpr double kPi = std::numbers::pi;

struct Setup {
  LandscapeSpec spec;
  ValleyStructure vs;
};

Setup dw2(std::shared_ptr<const SkewGenerator> skew) {
  auto spec = builtin_landscape("doublewell2d", std::move(skew));
  const Box& box = builtin_entry("doublewell2d").box;
  const auto crits = find_critical_points(spec, box);
  const auto& m0 = crits[nearest_critical_point(crits, Vector{{-1.0, 0.0}})];
  auto vs = build_valley_structure(spec, crits, m0, 0.25, box);
  return {std::move(spec), std::move(vs)};
}

TEST(EkConstant, DoubleWellNonReversible) {
  const auto s = dw2(planar_rotation_skew(1.0));
  const auto sc = ek_constant(s.vs.gates[0].saddle, s.spec, s.vs.gates[0].e1);
  EXPECT_NEAR(sc.mu, std::numbers::sqrt2, 1e-14);
  EXPECT_NEAR(sc.omega, std::numbers::sqrt2 / (2 * kPi), 1e-15);
  EXPECT_NEAR(sc.omega, 0.22508, 1e-5);
  EXPECT_NEAR(sc.omega_rev, 1.0 / (2 * kPi), 1e-15);
}

TEST(EkConstant, ReversibleIsExact) {
  const auto s = dw2(nullptr);
  const auto sc = ek_constant(s.vs.gates[0].saddle, s.spec, s.vs.gates[0].e1);
  EXPECT_EQ(sc.omega, sc.omega_rev);
  EXPECT_NEAR(sc.omega, 1.0 / (2 * kPi), 1e-16);
}

TEST(EkConstant, OneDimensional) {
  const auto spec = builtin_landscape("doublewell1d");
  const auto crits = find_critical_points(spec, builtin_entry("doublewell1d").box);
  const auto& saddle = crits[nearest_critical_point(crits, Vector{{0.0}})];
  const auto sc = ek_constant(saddle, spec);
  EXPECT_NEAR(sc.omega, 1.0 / (2 * kPi), 1e-16);
  EXPECT_EQ(sc.omega, sc.omega_rev);
}

TEST(EkConstant, RejectsNonSaddle) {
  const auto s = dw2(nullptr);
  try {
    ek_constant(s.vs.start, s.spec);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kContractViolation);
  }
}

TEST(EkConstant, NonSkewFieldIsModelInconsistency) {
  Matrix bad(2, 2);
  bad << 0, 1, 0, 0;
  const auto spec = builtin_landscape("doublewell2d", constant_skew(bad));
  const auto saddle = classify_critical_point(spec, Vector{{0.0, 0.0}});
  try {
    ek_constant(saddle, spec);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kModelInconsistency);
  }
}

TEST(Predict, DoubleWellMeanTime) {
  const auto s = dw2(planar_rotation_skew(1.0));
  const auto p = predict(s.vs, s.spec, {0.1});
  EXPECT_NEAR(p.nu0, 1.0 / std::numbers::sqrt2, 1e-15);
  EXPECT_NEAR(p.omega0, std::numbers::sqrt2 / (2 * kPi), 1e-15);
  EXPECT_NEAR(p.rows[0].mean_time / (kPi * std::exp(2.5)), 1.0, 1e-12);
  EXPECT_NEAR(p.rows[0].mean_time, 38.27, 5e-3);
  EXPECT_NEAR(p.rows[0].mean_time_rev / (kPi * std::numbers::sqrt2 * std::exp(2.5)), 1.0, 1e-12);
  ASSERT_TRUE(p.double_well_prefactor.has_value());
  EXPECT_NEAR(*p.double_well_prefactor / p.prefactor(), 1.0, 1e-12);
}

TEST(Predict, ReversibleMeanTime) {
  const auto s = dw2(nullptr);
  const auto p = predict(s.vs, s.spec, {0.1});
  EXPECT_NEAR(p.rows[0].mean_time, 54.13, 5e-3);
  EXPECT_EQ(p.rows[0].mean_time, p.rows[0].mean_time_rev);  // bit-for-bit
  EXPECT_EQ(p.omega0, p.omega0_rev);
  EXPECT_EQ(p.speedup, 1.0);
}

TEST(Predict, SpeedupIndependentOfEpsilon) {
  const auto s = dw2(planar_rotation_skew(1.0));
  const auto p = predict(s.vs, s.spec, kDefaultEpsilonLadder);
  ASSERT_EQ(p.rows.size(), 4u);
  for (const auto& r : p.rows) EXPECT_NEAR(r.mean_time_rev / r.mean_time, std::numbers::sqrt2, 1e-13);
}

TEST(Predict, LargerSkewAmplitudeIncreasesOmega) {
  double prev = 0.0;
  for (double a : {0.0, 0.5, 1.0, 2.0, 4.0}) {
    const auto s = dw2(planar_rotation_skew(a));
    const auto p = predict(s.vs, s.spec, {0.1});
    EXPECT_GT(p.omega0, prev);
    prev = p.omega0;
  }
}

TEST(Predict, FunctionalFormMonotonicity) {
  EKPrediction p;
  p.nu0 = 1.0;
  p.omega0 = 0.2;
  p.exponent = 0.25;
  const double base = p.mean_time(0.1);
  p.omega0 = 0.3;
  EXPECT_LT(p.mean_time(0.1), base);
  p.omega0 = 0.2;
  p.nu0 = 1.5;
  EXPECT_GT(p.mean_time(0.1), base);
  p.nu0 = 1.0;
  p.exponent = 0.3;
  EXPECT_GT(p.mean_time(0.1), base);
}

TEST(Predict, EmptyGateSetPropagates) {
  auto s = dw2(nullptr);
  s.vs.gates.clear();
  try {
    predict(s.vs, s.spec, {0.1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kGateNotFound);
  }
}

TEST(Predict, TwoGatesAddRates) {
  // Symmetric triple well x^2 (x^2 - 4)^2 / 16 + y^2 / 2: from the middle
  // minimum both saddles x = +-2/sqrt(3) gate the home valley.
  auto pot = std::make_shared<PolynomialPotential>(
      2, std::vector<PolynomialPotential::Term>{{1.0 / 16.0, {6, 0}}, {-0.5, {4, 0}}, {1.0, {2, 0}}, {0.5, {0, 2}}});
  const LandscapeSpec spec("symmetric_triple", pot, planar_rotation_skew(0.7));
  const Box box{Vector{{-3.0, -2.0}}, Vector{{3.0, 2.0}}};
  const auto crits = find_critical_points(spec, box);
  const auto& m0 = crits[nearest_critical_point(crits, Vector{{0.0, 0.0}})];
  const auto& saddle = crits[nearest_critical_point(crits, Vector{{1.15, 0.0}})];
  ASSERT_EQ(saddle.kind, CriticalKind::kSaddle);
  const auto vs = build_valley_structure(spec, crits, m0, saddle.value, box);
  ASSERT_EQ(vs.gates.size(), 2u);
  EXPECT_EQ(vs.minima_far.size(), 2u);
  const auto p = predict(vs, spec, {0.5});
  EXPECT_DOUBLE_EQ(p.omega0, p.saddles[0].omega + p.saddles[1].omega);
  EXPECT_NEAR(p.saddles[0].omega, p.saddles[1].omega, 1e-12);
  EXPECT_FALSE(p.double_well_prefactor.has_value());
}

TEST(ErrorBand, Formula) {
  EXPECT_NEAR(ek_error_band(0.1), std::sqrt(0.1) * std::log(10.0), 1e-15);
  EXPECT_NEAR(ek_error_band(0.1, 2.0), 2.0 * std::sqrt(0.1) * std::log(10.0), 1e-15);
}

}  // namespace
}  // namespace metastab
