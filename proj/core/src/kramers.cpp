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

#include "metastab/kramers.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "metastab/errors.hpp"

namespace metastab {

SaddleConstant ek_constant(const CriticalPoint& saddle, const LandscapeSpec& spec,
                           const std::optional<Vector>& e1_orientation) {
  if (saddle.kind != CriticalKind::kSaddle)
    throw Error(ErrorCode::kContractViolation, "ek_constant needs an index-1 saddle");
  const Matrix& h = saddle.hessian;
  const Matrix l = eval_ell_jacobian(spec, saddle.x);
  const Matrix hl = h * l;
  const double skew_res = (hl + hl.transpose()).norm();
  if (skew_res > 1e-8 * std::max(1.0, h.norm() * l.norm())) {
    std::ostringstream os;
    os << "H L is not skew-symmetric at the saddle (" << saddle.x.transpose() << "), residual " << skew_res
       << "; ell violates grad U . ell = 0 there";
    throw Error(ErrorCode::kModelInconsistency, os.str());
  }
  SaddleConstant sc;
  sc.saddle = saddle;
  sc.spectrum = saddle_spectrum(h, l, e1_orientation);
  sc.lambda = sc.spectrum.lambda1();
  sc.mu = sc.spectrum.mu;
  // sqrt(-det H) from the eigenvalue product.
  const double root_det = std::sqrt(-sc.spectrum.hessian_eigs.prod());
  sc.omega = sc.mu / (2.0 * std::numbers::pi * root_det);
  sc.omega_rev = sc.lambda / (2.0 * std::numbers::pi * root_det);
  return sc;
}

double ek_error_band(double epsilon, double c) { return c * std::sqrt(epsilon) * std::log(1.0 / epsilon); }

double EKPrediction::mean_time(double epsilon) const { return prefactor() * std::exp(exponent / epsilon); }

double EKPrediction::mean_time_rev(double epsilon) const { return prefactor_rev() * std::exp(exponent / epsilon); }

EKPrediction predict(const ValleyStructure& vs, const LandscapeSpec& spec, const std::vector<double>& epsilons) {
  if (vs.gates.empty()) throw Error(ErrorCode::kGateNotFound, "valley structure has no gate saddles");
  EKPrediction p;
  for (const auto& g : vs.gates) {
    p.saddles.push_back(ek_constant(g.saddle, spec, g.e1));
    p.omega0 += p.saddles.back().omega;
    p.omega0_rev += p.saddles.back().omega_rev;
  }
  for (const auto& m : vs.deepest_home) p.nu0 += 1.0 / std::sqrt(m.hessian_eigs.prod());
  p.exponent = vs.level - vs.h0;
  p.speedup = p.omega0 / p.omega0_rev;

  if (vs.minima_home.size() == 1 && vs.gates.size() == 1) {
    const auto& sc = p.saddles.front();
    const double det_sigma = sc.spectrum.hessian_eigs.prod();
    const double det_min = vs.minima_home.front().hessian_eigs.prod();
    const double closed = 2.0 * std::numbers::pi / sc.mu * std::sqrt(-det_sigma / det_min);
    const double rel = std::abs(closed - p.prefactor()) / p.prefactor();
    if (rel > 1e-12) {
      std::ostringstream os;
      os << "double-well closed form " << closed << " disagrees with nu0/omega0 = " << p.prefactor()
         << " (relative " << rel << ")";
      throw Error(ErrorCode::kNumericFailure, os.str());
    }
    p.double_well_prefactor = closed;
  }

  for (double eps : epsilons) {
    if (!(eps > 0.0)) throw Error(ErrorCode::kContractViolation, "epsilon must be positive");
    p.rows.push_back({eps, p.mean_time(eps), p.mean_time_rev(eps), ek_error_band(eps)});
  }
  return p;
}

}  // namespace metastab
