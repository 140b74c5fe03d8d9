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

#include <vector>

#include "metastab/kramers.hpp"
#include "metastab/landscape.hpp"
#include "metastab/spectral.hpp"

namespace metastab {

inline constexpr double kDefaultJBox = 4.0;

/// Saddle-local box C (Hessian axes, half-widths J delta / sqrt(lambda_1) along
/// e_1 and 2 J delta / sqrt(lambda_j) along e_j) and the level cap H + J^2 delta^2.
struct SaddleBox {
  Vector center;
  double epsilon = 0.0;
  double delta = 0.0;  ///< sqrt(eps log(1/eps))
  double j_box = 0.0;
  Matrix axes;         ///< Hessian eigenvectors, column 0 = e_1
  Vector lambdas;      ///< |Hessian eigenvalues|
  Vector half_widths;
  double level = 0.0;  ///< H = U(center)
  double level_cap = 0.0;

  /// center + sum alpha_i axes_i.
  Vector point(const Vector& alpha) const { return center + axes * alpha; }
};

/// Throws kContractViolation unless 0 < epsilon < 1 and j_box > 0.
SaddleBox make_saddle_box(const SaddleConstant& sc, double epsilon, double j_box);

/// p(x) = Phi((x - sigma) . v sqrt(mu / eps)).
double test_function(const VectorCRef& x, const VectorCRef& center, const SaddleSpectrum& s, double epsilon);
/// 1 - p(x), accurate deep in the upper tail.
double test_function_complement(const VectorCRef& x, const VectorCRef& center, const SaddleSpectrum& s,
                                double epsilon);
/// log(1 - Phi(z)) without underflow for large z.
double log_normal_upper_tail(double z);

/// One ladder entry. Integrals are scaled by exp(H / eps).
struct BoundaryRow {
  double epsilon = 0.0;
  double i1 = 0.0;
  double i2 = 0.0;
  double alpha_omega = 0.0;  ///< (2 pi eps)^{d/2} omega
  double ratio = 0.0;        ///< (i1 - i2) / alpha_omega
  double difference() const { return i1 - i2; }
};

struct BoundaryTable {
  double j_box = 0.0;
  double omega = 0.0;
  std::vector<BoundaryRow> rows;
  /// |ratio - 1| strictly decreases along the ladder.
  bool monotone_toward_one() const;
};

/// Face integrals over the + face of B = C intersected with {U < H + J^2 delta^2},
/// by adaptive Gauss–Kronrod quadrature. Requires d = 2 and a strictly
/// decreasing ladder; throws kNumericFailure when relative accuracy 1e-8 is
/// not reached with 2^16 panels.
BoundaryTable boundary_asymptotics(const LandscapeSpec& spec, const SaddleConstant& sc,
                                   const std::vector<double>& epsilon_ladder, double j_box = kDefaultJBox,
                                   unsigned threads = 1);

/// Relative difference between the two sides of the reduced-determinant identity.
double reduced_det_check(const SaddleSpectrum& s);

struct GeneratorResidualRow {
  double epsilon = 0.0;
  double integral = 0.0;  ///< integral over B of |L* p| exp(-(U - H)/eps)
  double ratio = 0.0;     ///< integral / (2 pi eps)^{d/2}
};

/// Linearized-generator residual of the test function over B (d = 2), on a
/// composite Gauss–Legendre grid with `panels` panels per axis.
std::vector<GeneratorResidualRow> generator_residual(const LandscapeSpec& spec, const SaddleConstant& sc,
                                                     const std::vector<double>& epsilon_ladder,
                                                     double j_box = kDefaultJBox, int panels = 64);

struct FaceSampleReport {
  int n_samples = 0;
  int n_violations = 0;
  double worst_margin = 0.0;  ///< most negative slack seen (>= 0 when all hold)
  bool pass() const { return n_violations == 0; }
};

/// Samples the + face of C and checks x . v >= a J delta or U >= H + a J^2 delta^2.
FaceSampleReport corner_exclusion(const LandscapeSpec& spec, const SaddleConstant& sc, double epsilon,
                                  double j_box, double a, int n_samples = 1001);

/// Samples the side faces of C (d = 2) and checks U >= H + (5/4) J^2 delta^2.
FaceSampleReport side_face_floor(const LandscapeSpec& spec, const SaddleConstant& sc, double epsilon,
                                 double j_box, int n_samples = 1001);

}  // namespace metastab
