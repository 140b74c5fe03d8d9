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
#include <limits>

#include <gtest/gtest.h>

#include "metastab/catalog.hpp"
#include "metastab/errors.hpp"
#include "metastab/landscape.hpp"
#include "metastab/topology.hpp"

namespace metastab {
namespace {

LandscapeSpec dw2(double a) { return builtin_landscape("doublewell2d", planar_rotation_skew(a)); }

TEST(EvalEll, DoubleWellHandValue) {
  const auto spec = dw2(1.0);
  const Vector x{{0.5, 0.0}};
  const Vector g = spec.gradient(x);
  EXPECT_DOUBLE_EQ(g[0], -0.375);
  EXPECT_DOUBLE_EQ(g[1], 0.0);
  const Vector ell = eval_ell(spec, x);
  EXPECT_DOUBLE_EQ(ell[0], 0.0);
  EXPECT_DOUBLE_EQ(ell[1], 0.375);
}

TEST(EvalEll, VanishesAtCriticalPoint) {
  const Vector ell = eval_ell(dw2(1.0), Vector{{1.0, 0.0}});
  EXPECT_EQ(ell.norm(), 0.0);
}

TEST(EvalEll, ReversibleIsZeroEverywhere) {
  const auto spec = builtin_landscape("doublewell2d");
  EXPECT_TRUE(spec.reversible());
  for (const auto& x : halton_probes(builtin_entry("doublewell2d").box, 64)) EXPECT_EQ(eval_ell(spec, x).norm(), 0.0);
}

TEST(EvalEll, NonFiniteInputThrowsEvaluationError) {
  const Vector x{{std::numeric_limits<double>::quiet_NaN(), 0.0}};
  try {
    eval_ell(dw2(1.0), x);
    FAIL() << "expected EvaluationError";
  } catch (const EvaluationError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEvaluation);
    EXPECT_TRUE(std::isnan(e.point()[0]));
  }
}

TEST(EvalEllJacobian, SaddleValue) {
  for (double a : {1.0, 2.5}) {
    const Matrix dl = eval_ell_jacobian(dw2(a), Vector{{0.0, 0.0}});
    EXPECT_NEAR(dl(0, 0), 0.0, 1e-15);
    EXPECT_NEAR(dl(0, 1), a, 1e-15);
    EXPECT_NEAR(dl(1, 0), a, 1e-15);
    EXPECT_NEAR(dl(1, 1), 0.0, 1e-15);
  }
}

TEST(EvalEllJacobian, ZeroWhenReversible) {
  const auto spec = builtin_landscape("doublewell2d");
  EXPECT_EQ(eval_ell_jacobian(spec, Vector{{0.3, -0.7}}).norm(), 0.0);
}

TEST(EvalEllJacobian, MatchesFiniteDifferences) {
  Matrix s(3, 3);
  s << 0, 1, -2, -1, 0, 0.5, 2, -0.5, 0;
  auto pot = std::make_shared<PolynomialPotential>(
      3, std::vector<PolynomialPotential::Term>{{0.25, {4, 0, 0}}, {-0.5, {2, 0, 0}}, {0.5, {0, 2, 0}},
                                                {1.0, {0, 0, 2}}, {0.3, {1, 1, 0}}, {0.1, {2, 0, 2}}});
  const LandscapeSpec spec("poly3", pot, std::make_shared<ScalarPolySkew>(s, std::vector<double>{1.0, 0.5, -0.2}));
  Box box{Vector::Constant(3, -1.5), Vector::Constant(3, 1.5)};
  const auto rep = certify_derivatives(spec, halton_probes(box));
  EXPECT_TRUE(rep.pass);
  EXPECT_LE(rep.max_jacobian_rel_err, kHessianTolerance);
  EXPECT_LE(rep.max_gradient_rel_err, kGradientTolerance);
  EXPECT_LE(rep.max_skew_residual, kSkewTolerance);
}

TEST(CertifyOrthogonality, ConstantSkewPassesTightly) {
  const auto rep = certify_orthogonality(dw2(1.0), halton_probes(builtin_entry("doublewell2d").box));
  EXPECT_TRUE(rep.pass);
  EXPECT_EQ(rep.n_probes, 256u);
  EXPECT_LT(rep.max_dot, 1e-12);
  EXPECT_LT(rep.max_divergence, 1e-12);
}

TEST(CertifyOrthogonality, ReversiblePassesTrivially) {
  const auto rep = certify_orthogonality(builtin_landscape("doublewell2d"), halton_probes(builtin_entry("doublewell2d").box));
  EXPECT_TRUE(rep.pass);
  EXPECT_EQ(rep.max_dot, 0.0);
}

TEST(CertifyOrthogonality, CorruptedSkewFails) {
  Matrix bad(2, 2);
  bad << 0, 1, 0, 0;
  const auto spec = builtin_landscape("doublewell2d", constant_skew(bad));
  const auto at_probe = certify_orthogonality(spec, {Vector{{0.5, 0.5}}});
  EXPECT_FALSE(at_probe.pass);
  EXPECT_GT(at_probe.max_dot, 0.0);
  const auto rep = certify_orthogonality(spec, halton_probes(builtin_entry("doublewell2d").box));
  EXPECT_FALSE(rep.pass);
  EXPECT_GT(rep.worst_scaled, 1.0);
  EXPECT_FALSE(certify_derivatives(spec, halton_probes(builtin_entry("doublewell2d").box)).pass);
}

TEST(CertifyOrthogonality, EmptyProbeSetIsContractViolation) {
  try {
    certify_orthogonality(dw2(1.0), {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kContractViolation);
  }
}

TEST(Catalog, EveryEntryIsCertifiedAndMorse) {
  for (const auto& name : builtin_names()) {
    const auto& entry = builtin_entry(name);
    const int d = entry.potential->dim();
    Matrix s = Matrix::Zero(d, d);
    if (d >= 2) s(0, 1) = 1.0, s(1, 0) = -1.0;
    const auto spec = builtin_landscape(name, constant_skew(s));
    const auto probes = halton_probes(entry.box);
    EXPECT_TRUE(certify_derivatives(spec, probes).pass) << name;
    EXPECT_TRUE(certify_orthogonality(spec, probes).pass) << name;
    const auto crits = find_critical_points(spec, entry.box);
    ASSERT_FALSE(crits.empty()) << name;
    for (const auto& c : crits) {
      EXPECT_GT(std::abs(c.hessian.determinant()), 1e-8) << name;
      EXPECT_LE(eval_ell(spec, c.x).norm(), 1e-8) << name;
      const Matrix hl = c.hessian * c.ell_jac;
      EXPECT_LE((hl + hl.transpose()).norm(), 1e-8) << name;
    }
  }
}

TEST(Catalog, UnknownNameIsConfigError) {
  try {
    builtin_entry("nope");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kConfig);
  }
}

TEST(Catalog, TripleWellLayout) {
  const auto spec = builtin_landscape("triplewell2d");
  const auto crits = find_critical_points(spec, builtin_entry("triplewell2d").box);
  int minima = 0, saddles = 0;
  for (const auto& c : crits) {
    minima += c.kind == CriticalKind::kMinimum;
    saddles += c.kind == CriticalKind::kSaddle;
  }
  EXPECT_EQ(minima, 3);
  EXPECT_EQ(saddles, 2);
}

TEST(ScalarPolySkew, StateDependentGeneratorKeepsStructure) {
  Matrix s(2, 2);
  s << 0, 1, -1, 0;
  const auto spec = builtin_landscape("doublewell2d", std::make_shared<ScalarPolySkew>(s, std::vector<double>{0.5, 2.0}));
  const auto probes = halton_probes(builtin_entry("doublewell2d").box);
  EXPECT_TRUE(certify_orthogonality(spec, probes).pass);
  EXPECT_TRUE(certify_derivatives(spec, probes).pass);
  EXPECT_FALSE(spec.skew().is_constant());
}

TEST(Halton, DeterministicAndInsideBox) {
  Box box{Vector{{-1.0, 2.0}}, Vector{{3.0, 5.0}}};
  const auto a = halton_probes(box, 100), b = halton_probes(box, 100);
  ASSERT_EQ(a.size(), 100u);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i], b[i]);
    EXPECT_TRUE(box.contains(a[i]));
  }
}

TEST(Drift, MatchesGradientPlusEll) {
  const auto spec = dw2(1.3);
  DriftWorkspace ws(2);
  Vector out(2);
  const Vector x{{0.7, -0.4}};
  spec.drift(x, 1.0, out, ws);
  EXPECT_LE((out - (spec.gradient(x) + eval_ell(spec, x))).norm(), 1e-15);
  spec.drift(x, -1.0, out, ws);
  EXPECT_LE((out - (spec.gradient(x) - eval_ell(spec, x))).norm(), 1e-15);
}

}  // namespace
}  // namespace metastab
