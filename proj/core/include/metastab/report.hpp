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

#include <nlohmann/json.hpp>

#include "metastab/kramers.hpp"
#include "metastab/landscape.hpp"
#include "metastab/saddlecheck.hpp"
#include "metastab/simulate.hpp"
#include "metastab/topology.hpp"

namespace metastab::report {

using nlohmann::json;

/// Shortest round-trip text for a double ("%.17g"); "nan"/"inf" spelled out.
std::string format_double(double x);

json to_json(const CriticalPoint& c);
json to_json(const ValleyStructure& vs);
json to_json(const OrthogonalityReport& r);
json to_json(const DerivativeReport& r);
json to_json(const SaddleConstant& s);
json to_json(const EKPrediction& p);
json to_json(const SimConfig& c);
json to_json(const EnsembleResult& r, bool include_trajectories = true);
json to_json(const GibbsResult& r, bool include_histograms = false);
json to_json(const EquilibriumEstimate& e);
json to_json(const BoundaryTable& t);
json to_json(const FaceSampleReport& r);

/// index,seed,hitting_time,censored
std::string ensemble_csv(const EnsembleResult& r);
/// epsilon,predicted,predicted_rev,speedup,error_band
std::string prediction_csv(const EKPrediction& p);
/// epsilon,I1,I2,I1_minus_I2,alpha_omega,ratio
std::string boundary_csv(const BoundaryTable& t);
/// x_1..x_d,kind,morse_index,value
std::string critical_points_csv(const std::vector<CriticalPoint>& crits);

}  // namespace metastab::report
