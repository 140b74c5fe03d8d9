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

#include <optional>
#include <vector>

#include "metastab/landscape.hpp"
#include "metastab/spectral.hpp"
#include "metastab/topology.hpp"

namespace metastab {

/// Eyring–Kramers constants of one index-1 saddle.
struct SaddleConstant {
  CriticalPoint saddle;
  SaddleSpectrum spectrum;
  double lambda = 0.0;     ///< |negative Hessian eigenvalue|
  double mu = 0.0;         ///< |negative eigenvalue of H + L|
  double omega = 0.0;      ///< mu / (2 pi sqrt(-det H))
  double omega_rev = 0.0;  ///< lambda / (2 pi sqrt(-det H))
};

/// Throws kContractViolation unless the point is an index-1 saddle and
/// kModelInconsistency when H L is not skew-symmetric at the saddle.
SaddleConstant ek_constant(const CriticalPoint& saddle, const LandscapeSpec& spec,
                           const std::optional<Vector>& e1_orientation = std::nullopt);

/// Heuristic relative error band C sqrt(eps) log(1/eps).
double ek_error_band(double epsilon, double c = 1.0);

inline const std::vector<double> kDefaultEpsilonLadder = {0.15, 0.12, 0.10, 0.08};

struct PredictionRow {
  double epsilon = 0.0;
  double mean_time = 0.0;
  double mean_time_rev = 0.0;
  double error_band = 0.0;  ///< heuristic, C = 1
};

struct EKPrediction {
  std::vector<SaddleConstant> saddles;
  double omega0 = 0.0;
  double omega0_rev = 0.0;
  double nu0 = 0.0;
  double exponent = 0.0;  ///< H - h0
  double speedup = 0.0;   ///< omega0 / omega0_rev
  /// 2 pi / mu sqrt(-det H^sigma / det H^m), set when |M_0| = |Sigma_0| = 1.
  std::optional<double> double_well_prefactor;
  std::vector<PredictionRow> rows;

  double prefactor() const { return nu0 / omega0; }
  double prefactor_rev() const { return nu0 / omega0_rev; }
  double mean_time(double epsilon) const;
  double mean_time_rev(double epsilon) const;
};

/// nu0 / omega0 exp((H - h0) / eps) and its reversible counterpart.
/// Throws kGateNotFound when the valley structure has no gates.
EKPrediction predict(const ValleyStructure& vs, const LandscapeSpec& spec, const std::vector<double>& epsilons);

}  // namespace metastab
