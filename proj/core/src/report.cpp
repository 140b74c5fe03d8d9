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

#include "metastab/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "metastab/io.hpp"
#include "metastab/rng.hpp"

namespace metastab::report {

using io::to_json;

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

json to_json(const CriticalPoint& c) {
  return {{"x", to_json(c.x)},
          {"kind", std::string(metastab::to_string(c.kind))},
          {"morse_index", c.morse_index},
          {"value", c.value},
          {"hessian_eigenvalues", to_json(c.hessian_eigs)},
          {"ell_jacobian", to_json(c.ell_jac)}};
}

json to_json(const ValleyStructure& vs) {
  json gates = json::array();
  for (const auto& g : vs.gates)
    gates.push_back({{"saddle", to_json(g.saddle)}, {"e1", to_json(g.e1)}, {"far_component", g.far_component}});
  auto list = [](const std::vector<CriticalPoint>& v) {
    json a = json::array();
    for (const auto& c : v) a.push_back(to_json(c));
    return a;
  };
  return {{"level", vs.level},
          {"requested_level", vs.requested_level},
          {"level_tolerance", vs.level_tolerance},
          {"start", to_json(vs.start)},
          {"gates", gates},
          {"minima_home", list(vs.minima_home)},
          {"minima_far", list(vs.minima_far)},
          {"far_components", vs.far_components},
          {"deepest_home", list(vs.deepest_home)},
          {"h0", vs.h0},
          {"home_component", vs.home_component},
          {"n_components", vs.n_components},
          {"box", to_json(vs.box)},
          {"cells_per_axis", vs.cells_per_axis},
          {"spacing", to_json(vs.spacing)},
          {"warnings", vs.warnings}};
}

json to_json(const OrthogonalityReport& r) {
  return {{"n_probes", r.n_probes},
          {"max_dot", r.max_dot},
          {"max_divergence", r.max_divergence},
          {"worst_scaled", r.worst_scaled},
          {"worst_probe", to_json(r.worst_probe)},
          {"pass", r.pass}};
}

json to_json(const DerivativeReport& r) {
  return {{"n_probes", r.n_probes},
          {"max_skew_residual", r.max_skew_residual},
          {"max_gradient_rel_err", r.max_gradient_rel_err},
          {"max_hessian_rel_err", r.max_hessian_rel_err},
          {"max_jacobian_rel_err", r.max_jacobian_rel_err},
          {"pass", r.pass}};
}

json to_json(const SaddleConstant& s) {
  return {{"x", to_json(s.saddle.x)},
          {"value", s.saddle.value},
          {"lambda1", s.lambda},
          {"mu", s.mu},
          {"v", to_json(s.spectrum.v)},
          {"e1", to_json(s.spectrum.e1())},
          {"hessian_eigenvalues", to_json(s.spectrum.hessian_eigs)},
          {"omega", s.omega},
          {"omega_rev", s.omega_rev}};
}

json to_json(const EKPrediction& p) {
  json saddles = json::array();
  for (const auto& s : p.saddles) saddles.push_back(to_json(s));
  json rows = json::array();
  for (const auto& r : p.rows)
    rows.push_back({{"epsilon", r.epsilon},
                    {"mean_time", r.mean_time},
                    {"mean_time_rev", r.mean_time_rev},
                    {"error_band_heuristic", r.error_band}});
  json j = {{"saddles", saddles},     {"omega0", p.omega0},   {"omega0_rev", p.omega0_rev},
            {"nu0", p.nu0},           {"exponent", p.exponent}, {"speedup", p.speedup},
            {"prefactor", p.prefactor()}, {"prefactor_rev", p.prefactor_rev()}, {"rows", rows}};
  if (p.double_well_prefactor) j["double_well_prefactor"] = *p.double_well_prefactor;
  return j;
}

json to_json(const SimConfig& c) {
  return {{"epsilon", c.epsilon},     {"dt", c.dt},
          {"n_traj", c.n_traj},       {"master_seed", c.master_seed},
          {"ball_radius", c.radius()}, {"t_max", c.t_max},
          {"guard_radius", c.guard_radius}, {"adjoint", c.adjoint},
          {"rng", kRngDescription}};
}

json to_json(const EnsembleResult& r, bool include_trajectories) {
  json j = {{"mean", r.mean},
            {"std_error", r.std_error},
            {"ci95", {r.ci_lo, r.ci_hi}},
            {"min", r.min},
            {"max", r.max},
            {"n_traj", r.trajectories.size()},
            {"n_censored", r.n_censored},
            {"config", to_json(r.config)}};
  if (include_trajectories) {
    json t = json::array();
    for (const auto& h : r.trajectories) t.push_back({{"seed", h.seed}, {"time", h.time}, {"censored", h.censored}});
    j["trajectories"] = t;
  }
  return j;
}

json to_json(const GibbsResult& r, bool include_histograms) {
  json j = {{"bins", r.bins},
            {"tv_distance", r.tv_distance},
            {"n_samples", r.n_samples},
            {"n_outside", r.n_outside}};
  if (include_histograms) {
    j["empirical"] = r.empirical;
    j["reference"] = r.reference;
  }
  return j;
}

json to_json(const EquilibriumEstimate& e) {
  return {{"p_a", e.p_a},           {"p_b", e.p_b},
          {"n_a", e.n_a},           {"n_b", e.n_b},
          {"n_censored", e.n_censored}, {"ci95_wilson", {e.ci_lo, e.ci_hi}}};
}

json to_json(const BoundaryTable& t) {
  json rows = json::array();
  for (const auto& r : t.rows)
    rows.push_back({{"epsilon", r.epsilon},
                    {"I1", r.i1},
                    {"I2", r.i2},
                    {"I1_minus_I2", r.difference()},
                    {"alpha_omega", r.alpha_omega},
                    {"ratio", r.ratio}});
  return {{"J_box", t.j_box},
          {"omega", t.omega},
          {"scaling", "integrals multiplied by exp(H/eps); Gibbs normalization Z = 1"},
          {"rows", rows},
          {"monotone_toward_one", t.monotone_toward_one()}};
}

json to_json(const FaceSampleReport& r) {
  return {{"n_samples", r.n_samples},
          {"n_violations", r.n_violations},
          {"worst_margin", r.worst_margin},
          {"pass", r.pass()}};
}

std::string ensemble_csv(const EnsembleResult& r) {
  std::ostringstream os;
  os << "index,seed,hitting_time,censored\n";
  for (std::size_t i = 0; i < r.trajectories.size(); ++i) {
    const auto& h = r.trajectories[i];
    os << i << ',' << h.seed << ',' << format_double(h.time) << ',' << (h.censored ? 1 : 0) << '\n';
  }
  return os.str();
}

std::string prediction_csv(const EKPrediction& p) {
  std::ostringstream os;
  os << "epsilon,predicted,predicted_rev,speedup,error_band_heuristic\n";
  for (const auto& r : p.rows)
    os << format_double(r.epsilon) << ',' << format_double(r.mean_time) << ',' << format_double(r.mean_time_rev)
       << ',' << format_double(p.speedup) << ',' << format_double(r.error_band) << '\n';
  return os.str();
}

std::string boundary_csv(const BoundaryTable& t) {
  std::ostringstream os;
  os << "epsilon,I1,I2,I1_minus_I2,alpha_omega,ratio\n";
  for (const auto& r : t.rows)
    os << format_double(r.epsilon) << ',' << format_double(r.i1) << ',' << format_double(r.i2) << ','
       << format_double(r.difference()) << ',' << format_double(r.alpha_omega) << ',' << format_double(r.ratio)
       << '\n';
  return os.str();
}

std::string critical_points_csv(const std::vector<CriticalPoint>& crits) {
  std::ostringstream os;
  const int d = crits.empty() ? 0 : static_cast<int>(crits.front().x.size());
  for (int i = 0; i < d; ++i) os << "x" << (i + 1) << ',';
  os << "kind,morse_index,value\n";
  for (const auto& c : crits) {
    for (int i = 0; i < d; ++i) os << format_double(c.x[i]) << ',';
    os << metastab::to_string(c.kind) << ',' << c.morse_index << ',' << format_double(c.value) << '\n';
  }
  return os.str();
}

}  // namespace metastab::report
