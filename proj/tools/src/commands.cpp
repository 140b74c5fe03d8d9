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

#include "metastab/cli/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "metastab/catalog.hpp"
#include "metastab/errors.hpp"
#include "metastab/io.hpp"
#include "metastab/report.hpp"
#include "metastab/rng.hpp"
#include "metastab/saddlecheck.hpp"
#include "metastab/simulate.hpp"

#ifndef METASTAB_VERSION
#define METASTAB_VERSION "0.0.0"
#endif

namespace metastab::cli {

namespace {

namespace fs = std::filesystem;
using report::format_double;

[[noreturn]] void config_error(const std::string& field, const std::string& msg) {
  throw Error(ErrorCode::kConfig, "field '" + field + "': " + msg);
}

const json* section(const json& config, const char* key) {
  if (!config.contains(key)) return nullptr;
  const json& s = config.at(key);
  if (!s.is_object()) config_error(key, "must be an object");
  return &s;
}

std::vector<double> epsilon_list(const json& config, bool required) {
  if (!config.contains("epsilons")) {
    if (required) config_error("epsilons", "missing");
    return kDefaultEpsilonLadder;
  }
  const json& e = config.at("epsilons");
  if (!e.is_array() || e.empty()) config_error("epsilons", "must be a non-empty list of positive numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (!e[i].is_number() || !(e[i].get<double>() > 0.0))
      config_error("epsilons[" + std::to_string(i) + "]", "must be a positive number");
    out.push_back(e[i].get<double>());
  }
  return out;
}

std::vector<double> number_list(const json& obj, const char* key, const std::string& path) {
  const json& e = io::require(obj, key, path);
  if (!e.is_array() || e.empty()) config_error(path + "." + key, "must be a non-empty list");
  std::vector<double> out;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (!e[i].is_number()) config_error(path + "." + key + "[" + std::to_string(i) + "]", "must be a number");
    out.push_back(e[i].get<double>());
  }
  return out;
}

bool get_bool_or(const json& obj, const char* key, const std::string& path, bool fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj.at(key).is_boolean()) config_error(path + "." + key, "must be true or false");
  return obj.at(key).get<bool>();
}

std::string iso_utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

/// Collects the files of one command run and writes the manifest last.
class OutputDir {
 public:
  OutputDir(std::string command, const json& config, const Options& opts)
      : command_(std::move(command)),
        opts_(opts),
        hash_(config_hash(config, opts)),
        dir_(opts.out_dir / command_ / hash_),
        started_(iso_utc_now()),
        clock_(std::chrono::steady_clock::now()) {
    fs::create_directories(dir_);
  }

  const fs::path& path() const { return dir_; }

  void write(const std::string& name, const std::string& content) {
    std::ofstream f(dir_ / name, std::ios::binary | std::ios::trunc);
    if (!f) throw Error(ErrorCode::kNumericFailure, "cannot write " + (dir_ / name).string());
    f << content;
    files_.push_back(name);
  }

  void write_json(const std::string& name, const json& j) { write(name, j.dump(2) + "\n"); }

  void add_seed(std::uint64_t s) { seeds_.push_back(s); }

  CommandResult finish(json report, bool pass, int exit_code = kExitOk) {
    report["command"] = command_;
    report["pass"] = pass;
    write_json("report.json", report);
    files_.push_back("manifest.json");
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - clock_).count();
    json manifest = {{"command", command_},
                     {"config_path", opts_.config_path},
                     {"config_hash", hash_},
                     {"output_dir", dir_.string()},
                     {"tool_version", METASTAB_VERSION},
                     {"started_at", started_},
                     {"wall_clock_seconds", elapsed},
                     {"seed", opts_.seed},
                     {"seeds_used", seeds_},
                     {"rng", kRngDescription},
                     {"files", files_}};
    std::ofstream(dir_ / "manifest.json", std::ios::binary | std::ios::trunc) << manifest.dump(2) << "\n";
    return {exit_code, dir_, std::move(report), files_, pass};
  }

 private:
  std::string command_;
  Options opts_;
  std::string hash_;
  fs::path dir_;
  std::string started_;
  std::chrono::steady_clock::time_point clock_;
  std::vector<std::string> files_;
  std::vector<std::uint64_t> seeds_;
};

json crit_list(const std::vector<CriticalPoint>& crits) {
  json a = json::array();
  for (const auto& c : crits) a.push_back(report::to_json(c));
  return a;
}

const ValleyStructure& require_valley(const Model& m) {
  if (!m.valley) config_error("level", "this command needs 'level' or 'targets'");
  return *m.valley;
}

/// Simulation settings for one epsilon; seed index k selects the stream family.
SimConfig sim_config(const json& config, const Model& m, const Options& opts, double eps, std::size_t k,
                     double predicted_mean) {
  SimConfig c;
  c.epsilon = eps;
  c.dt = default_dt(m.crits);
  c.guard_radius = default_guard_radius(m.crits);
  c.master_seed = derive_seed(opts.seed, k);
  c.threads = opts.threads;
  c.n_traj = 1000;
  double t_max_factor = 20.0;
  if (const json* s = section(config, "simulation")) {
    const std::string p = "simulation";
    c.dt = io::get_double_or(*s, "dt", p, c.dt);
    if (s->contains("n_traj")) {
      const long long n = io::get_int(*s, "n_traj", p);
      if (n < 1) config_error(p + ".n_traj", "must be at least 1");
      c.n_traj = static_cast<std::size_t>(n);
    }
    if (s->contains("ball_radius")) c.ball_radius = io::get_double(*s, "ball_radius", p);
    c.guard_radius = io::get_double_or(*s, "guard_radius", p, c.guard_radius);
    c.adjoint = get_bool_or(*s, "adjoint", p, false);
    t_max_factor = io::get_double_or(*s, "t_max_factor", p, t_max_factor);
    if (s->contains("t_max")) predicted_mean = -1.0, c.t_max = io::get_double(*s, "t_max", p);
  }
  if (predicted_mean > 0.0) c.t_max = std::max(10.0 * c.dt, t_max_factor * predicted_mean);
  try {
    c.validate();
  } catch (const Error& e) {
    config_error("simulation", e.what());
  }
  return c;
}

std::vector<Ball> balls_around(const std::vector<CriticalPoint>& minima, double radius) {
  std::vector<Ball> out;
  for (const auto& m : minima) out.push_back({m.x, radius});
  return out;
}

LandscapeSpec reversible_of(const LandscapeSpec& spec) { return spec.with_skew(zero_skew(spec.dim())); }

}  // namespace

std::string config_hash(const json& config, const Options& opts) {
  const std::string text =
      config.dump() + "|seed=" + std::to_string(opts.seed) + "|tolerance=" + format_double(opts.tolerance);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

Model build_model(const json& config) {
  if (!config.is_object()) throw Error(ErrorCode::kConfig, "config must be a JSON object");
  Model m{io::landscape_from_json(io::require(config, "landscape", ""), "landscape"), Box{}, {}, {}, std::nullopt};
  if (config.contains("box")) {
    m.box = io::box_from_json(config.at("box"), "box");
  } else {
    const json& pot = config.at("landscape").at("potential");
    if (!(pot.contains("kind") && pot.at("kind") == "builtin"))
      config_error("box", "required for non-builtin potentials");
    m.box = builtin_entry(pot.at("name").get<std::string>()).box;
  }
  if (m.box.dim() != m.spec.dim()) config_error("box", "dimension differs from the landscape");

  int seeds = 8, cells = 0;
  if (const json* a = section(config, "analysis")) {
    if (a->contains("seeds_per_axis")) seeds = static_cast<int>(io::get_int(*a, "seeds_per_axis", "analysis"));
    if (a->contains("cells_per_axis")) cells = static_cast<int>(io::get_int(*a, "cells_per_axis", "analysis"));
  }
  m.crits = find_critical_points(m.spec, m.box, seeds);

  std::vector<CriticalPoint> minima;
  for (const auto& c : m.crits)
    if (c.kind == CriticalKind::kMinimum) minima.push_back(c);
  if (minima.empty()) throw Error(ErrorCode::kInconsistentLevel, "no local minimum found in the box");
  if (config.contains("start")) {
    const Vector start = io::vector_from_json(config.at("start"), "start");
    if (start.size() != m.spec.dim()) config_error("start", "dimension differs from the landscape");
    m.m0 = minima[nearest_critical_point(minima, start)];
  } else {
    m.m0 = minima.front();  // crits are sorted by value
  }

  if (config.contains("level")) {
    const double level = io::get_double(config, "level", "");
    m.valley = build_valley_structure(m.spec, m.crits, m.m0, level, m.box, cells);
  } else if (config.contains("targets")) {
    const json& t = config.at("targets");
    if (!t.is_array() || t.empty()) config_error("targets", "must be a non-empty list of points");
    std::vector<Vector> targets;
    for (std::size_t i = 0; i < t.size(); ++i)
      targets.push_back(io::vector_from_json(t[i], "targets[" + std::to_string(i) + "]"));
    const double level = auto_gate_level(m.spec, m.crits, m.m0, targets, m.box, cells);
    m.valley = build_valley_structure(m.spec, m.crits, m.m0, level, m.box, cells);
  }
  return m;
}

CommandResult cmd_analyze(const json& config, const Options& opts) {
  const Model m = build_model(config);
  OutputDir out("analyze", config, opts);
  const auto probes = halton_probes(m.box);
  const auto ortho = certify_orthogonality(m.spec, probes);
  const auto deriv = certify_derivatives(m.spec, probes);
  const bool pass = ortho.pass && deriv.pass;
  json rep = {{"landscape", m.spec.name()},
              {"dim", m.spec.dim()},
              {"box", io::to_json(m.box)},
              {"critical_points", crit_list(m.crits)},
              {"start_minimum", report::to_json(m.m0)},
              {"certificates", {{"orthogonality", report::to_json(ortho)}, {"derivatives", report::to_json(deriv)}}}};
  if (m.valley) rep["valley"] = report::to_json(*m.valley);
  out.write("critical_points.csv", report::critical_points_csv(m.crits));
  if (!pass) {
    rep["error"] = ortho.pass ? "derivative certificate failed" : "orthogonality certificate failed";
    return out.finish(std::move(rep), false, kExitModel);
  }
  return out.finish(std::move(rep), true);
}

CommandResult cmd_predict(const json& config, const Options& opts) {
  const Model m = build_model(config);
  const auto& vs = require_valley(m);
  const auto eps = epsilon_list(config, false);
  const auto pred = predict(vs, m.spec, eps);
  OutputDir out("predict", config, opts);
  json rep = {{"landscape", m.spec.name()}, {"valley", report::to_json(vs)}, {"prediction", report::to_json(pred)}};
  out.write("prediction.csv", report::prediction_csv(pred));
  return out.finish(std::move(rep), true);
}

namespace {

struct EnsembleRun {
  SimConfig cfg;
  EnsembleResult result;
};

std::vector<EnsembleRun> run_ladder(const json& config, const Model& m, const Options& opts,
                                    const EKPrediction& pred, OutputDir& out, const LandscapeSpec& spec,
                                    const std::vector<double>& eps, std::size_t seed_offset, const char* prefix) {
  const auto& vs = require_valley(m);
  std::vector<EnsembleRun> runs;
  for (std::size_t k = 0; k < eps.size(); ++k) {
    const double predicted = spec.reversible() ? pred.mean_time_rev(eps[k]) : pred.mean_time(eps[k]);
    SimConfig cfg = sim_config(config, m, opts, eps[k], seed_offset + k, predicted);
    out.add_seed(cfg.master_seed);
    EnsembleResult r = run_ensemble(m.m0.x, balls_around(vs.minima_far, cfg.radius()), spec, cfg);
    out.write(std::string(prefix) + std::to_string(k) + ".csv", report::ensemble_csv(r));
    runs.push_back({cfg, std::move(r)});
  }
  return runs;
}

}  // namespace

CommandResult cmd_simulate(const json& config, const Options& opts) {
  const Model m = build_model(config);
  const auto& vs = require_valley(m);
  // An equilibrium-only config skips the escape-time ensembles.
  const bool ensembles = config.contains("epsilons") || !config.contains("equilibrium");
  const auto eps = ensembles ? epsilon_list(config, true) : std::vector<double>{};
  OutputDir out("simulate", config, opts);
  std::vector<EnsembleRun> runs;
  if (ensembles) runs = run_ladder(config, m, opts, predict(vs, m.spec, eps), out, m.spec, eps, 0, "ensemble_");
  json ens = json::array();
  for (std::size_t k = 0; k < runs.size(); ++k) {
    json e = report::to_json(runs[k].result, false);
    e["trajectories_csv"] = "ensemble_" + std::to_string(k) + ".csv";
    ens.push_back(e);
  }
  json rep = {{"landscape", m.spec.name()}, {"start", io::to_json(m.m0.x)}, {"ensembles", ens}};

  if (const json* eq = section(config, "equilibrium")) {
    const std::string p = "equilibrium";
    const double e = io::get_double(*eq, "epsilon", p);
    SimConfig cfg = sim_config(config, m, opts, e, 1000, -1.0);
    if (eq->contains("n_traj")) cfg.n_traj = static_cast<std::size_t>(io::get_int(*eq, "n_traj", p));
    cfg.t_max = io::get_double_or(*eq, "t_max", p, 1e3);
    const double radius = io::get_double_or(*eq, "radius", p, cfg.radius());
    out.add_seed(cfg.master_seed);
    const json& pts = io::require(*eq, "points", p);
    if (!pts.is_array() || pts.empty()) config_error(p + ".points", "must be a non-empty list");
    json est = json::array();
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const Vector x = io::vector_from_json(pts[i], p + ".points[" + std::to_string(i) + "]");
      const auto r = equilibrium_potential(x, balls_around(vs.minima_home, radius),
                                           balls_around(vs.minima_far, radius), m.spec, cfg);
      json j = report::to_json(r);
      j["x"] = io::to_json(x);
      est.push_back(j);
    }
    rep["equilibrium"] = {{"epsilon", e}, {"radius", radius}, {"config", report::to_json(cfg)}, {"estimates", est}};
  }
  return out.finish(std::move(rep), true);
}

CommandResult cmd_compare(const json& config, const Options& opts) {
  const Model m = build_model(config);
  const auto& vs = require_valley(m);
  const auto eps = epsilon_list(config, true);
  const auto pred = predict(vs, m.spec, eps);
  OutputDir out("compare", config, opts);
  const auto runs = run_ladder(config, m, opts, pred, out, m.spec, eps, 0, "ensemble_");

  std::ostringstream csv;
  csv << "epsilon,predicted,predicted_rev,empirical_mean,ci_lo,ci_hi,ratio\n";
  json rows = json::array();
  bool pass = true;
  std::vector<double> errs;
  for (std::size_t k = 0; k < eps.size(); ++k) {
    const auto& r = runs[k].result;
    const double predicted = pred.mean_time(eps[k]);
    const double ratio = r.mean / predicted;
    const bool ok = std::abs(ratio - 1.0) <= opts.tolerance;
    pass = pass && ok;
    errs.push_back(std::abs(ratio - 1.0));
    csv << format_double(eps[k]) << ',' << format_double(predicted) << ',' << format_double(pred.mean_time_rev(eps[k]))
        << ',' << format_double(r.mean) << ',' << format_double(r.ci_lo) << ',' << format_double(r.ci_hi) << ','
        << format_double(ratio) << '\n';
    json ens = report::to_json(r, false);
    ens["trajectories_csv"] = "ensemble_" + std::to_string(k) + ".csv";
    rows.push_back({{"epsilon", eps[k]},
                    {"predicted", predicted},
                    {"predicted_rev", pred.mean_time_rev(eps[k])},
                    {"empirical_mean", r.mean},
                    {"ci95", {r.ci_lo, r.ci_hi}},
                    {"ratio", ratio},
                    {"pass", ok},
                    {"ensemble", ens}});
  }
  out.write("compare.csv", csv.str());

  json rep = {{"landscape", m.spec.name()},
              {"start", io::to_json(m.m0.x)},
              {"tolerance", opts.tolerance},
              {"prediction", report::to_json(pred)},
              {"rows", rows}};

  // Optional paired reversible baseline (same seeds, skew removed).
  if (const json* c = section(config, "compare"); c && c->contains("reversible_epsilons")) {
    const auto rev_eps = number_list(*c, "reversible_epsilons", "compare");
    const LandscapeSpec rev = reversible_of(m.spec);
    json speed = json::array();
    for (std::size_t i = 0; i < rev_eps.size(); ++i) {
      const auto it = std::find(eps.begin(), eps.end(), rev_eps[i]);
      if (it == eps.end()) config_error("compare.reversible_epsilons", "every entry must also be in 'epsilons'");
      const std::size_t k = static_cast<std::size_t>(it - eps.begin());
      SimConfig cfg = sim_config(config, m, opts, eps[k], k, pred.mean_time_rev(eps[k]));
      const EnsembleResult r = run_ensemble(m.m0.x, balls_around(vs.minima_far, cfg.radius()), rev, cfg);
      out.write("ensemble_rev_" + std::to_string(k) + ".csv", report::ensemble_csv(r));
      const auto& nr = runs[k].result;
      const double s = r.mean / nr.mean;
      const double se = s * std::hypot(r.std_error / r.mean, nr.std_error / nr.mean);
      speed.push_back({{"epsilon", eps[k]},
                       {"mean_rev", r.mean},
                       {"mean", nr.mean},
                       {"speedup_empirical", s},
                       {"speedup_ci95", {s - 1.96 * se, s + 1.96 * se}},
                       {"speedup_predicted", pred.speedup},
                       {"reversible_not_faster", r.mean >= nr.mean},
                       {"ensemble_rev", report::to_json(r, false)}});
    }
    rep["speedup"] = speed;
  }

  // Least-squares slope of |ratio - 1| against epsilon: >= 0 means the
  // discrepancy does not grow as epsilon decreases.
  double slope = 0.0;
  if (eps.size() >= 2) {
    double me = 0.0, mr = 0.0;
    for (std::size_t k = 0; k < eps.size(); ++k) me += eps[k], mr += errs[k];
    me /= eps.size();
    mr /= eps.size();
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t k = 0; k < eps.size(); ++k) sxy += (eps[k] - me) * (errs[k] - mr), sxx += (eps[k] - me) * (eps[k] - me);
    slope = sxx > 0.0 ? sxy / sxx : 0.0;
  }
  rep["error_trend"] = {{"slope_abs_error_vs_epsilon", slope}, {"nonincreasing_as_epsilon_decreases", slope >= 0.0}};
  return out.finish(std::move(rep), pass);
}

CommandResult cmd_gibbs(const json& config, const Options& opts) {
  const Model m = build_model(config);
  const json* g = section(config, "gibbs");
  if (!g) config_error("gibbs", "missing");
  const std::string p = "gibbs";
  const double eps = io::get_double(*g, "epsilon", p);
  const double burn_in = io::get_double_or(*g, "burn_in", p, 100.0);
  const double duration = io::get_double(*g, "duration", p);
  const Box box = g->contains("box") ? io::box_from_json(g->at("box"), p + ".box") : m.box;
  std::vector<int> bins;
  for (double b : number_list(*g, "bins", p)) bins.push_back(static_cast<int>(b));
  const double tv_max = io::get_double_or(*g, "tv_max", p, 0.08);
  const double tv_between_max = io::get_double_or(*g, "tv_between_max", p, 0.05);

  SimConfig cfg = sim_config(config, m, opts, eps, 0, -1.0);
  cfg.dt = io::get_double_or(*g, "dt", p, cfg.dt);
  cfg.t_max = std::max(cfg.t_max, duration);
  OutputDir out("gibbs", config, opts);
  out.add_seed(cfg.master_seed);

  const bool with_rev = get_bool_or(*g, "compare_reversible", p, !m.spec.reversible());
  const GibbsResult res = gibbs_histogram(m.spec, cfg, m.m0.x, burn_in, duration, box, bins);
  json rep = {{"landscape", m.spec.name()},
              {"epsilon", eps},
              {"burn_in", burn_in},
              {"duration", duration},
              {"box", io::to_json(box)},
              {"config", report::to_json(cfg)},
              {"histogram", report::to_json(res)},
              {"tv_max", tv_max}};
  bool pass = res.tv_distance <= tv_max;
  std::optional<GibbsResult> rev;
  if (with_rev) {
    rev = gibbs_histogram(reversible_of(m.spec), cfg, m.m0.x, burn_in, duration, box, bins);
    const double between = total_variation(res.empirical, rev->empirical);
    rep["histogram_reversible"] = report::to_json(*rev);
    rep["tv_between"] = between;
    rep["tv_between_max"] = tv_between_max;
    pass = pass && rev->tv_distance <= tv_max && between <= tv_between_max;
  }

  std::ostringstream csv;
  csv << "bin,reference,empirical" << (rev ? ",empirical_reversible" : "") << '\n';
  for (std::size_t b = 0; b < res.reference.size(); ++b) {
    csv << b << ',' << format_double(res.reference[b]) << ',' << format_double(res.empirical[b]);
    if (rev) csv << ',' << format_double(rev->empirical[b]);
    csv << '\n';
  }
  out.write("histogram.csv", csv.str());
  return out.finish(std::move(rep), pass);
}

CommandResult cmd_saddle_check(const json& config, const Options& opts) {
  const Model m = build_model(config);
  const auto& vs = require_valley(m);
  std::vector<double> eps = {1e-3, 3e-4, 1e-4};
  double j_box = kDefaultJBox, ratio_tol = 0.05, corner_a = 0.1;
  if (const json* s = section(config, "saddle_check")) {
    const std::string p = "saddle_check";
    if (s->contains("epsilons")) eps = number_list(*s, "epsilons", p);
    j_box = io::get_double_or(*s, "J_box", p, j_box);
    ratio_tol = io::get_double_or(*s, "ratio_tolerance", p, ratio_tol);
    corner_a = io::get_double_or(*s, "corner_a", p, corner_a);
  }
  OutputDir out("saddle-check", config, opts);
  json saddles = json::array();
  bool pass = true;
  for (std::size_t i = 0; i < vs.gates.size(); ++i) {
    const auto sc = ek_constant(vs.gates[i].saddle, m.spec, vs.gates[i].e1);
    const auto table = boundary_asymptotics(m.spec, sc, eps, j_box, opts.threads);
    const double final_ratio = table.rows.back().ratio;
    const bool within = std::abs(final_ratio - 1.0) <= ratio_tol;
    const double rd = reduced_det_check(sc.spectrum);
    const auto resid = generator_residual(m.spec, sc, eps, j_box);
    json resid_rows = json::array();
    bool resid_decreasing = true;
    for (std::size_t k = 0; k < resid.size(); ++k) {
      resid_rows.push_back({{"epsilon", resid[k].epsilon}, {"integral", resid[k].integral}, {"ratio", resid[k].ratio}});
      if (k > 0 && !(resid[k].ratio < resid[k - 1].ratio)) resid_decreasing = false;
    }
    const auto corner = corner_exclusion(m.spec, sc, eps.back(), j_box, corner_a);
    const auto floor = side_face_floor(m.spec, sc, eps.back(), j_box);
    const std::string csv_name = "boundary_" + std::to_string(i) + ".csv";
    out.write(csv_name, report::boundary_csv(table));
    const bool ok = within && table.monotone_toward_one() && rd <= 1e-10;
    pass = pass && ok;
    saddles.push_back({{"saddle", report::to_json(sc)},
                       {"boundary", report::to_json(table)},
                       {"boundary_csv", csv_name},
                       {"final_ratio_within_tolerance", within},
                       {"reduced_det_relative_difference", rd},
                       {"generator_residual", {{"rows", resid_rows}, {"decreasing", resid_decreasing},
                                               {"final_below_0_1", resid.back().ratio < 0.1}}},
                       {"corner_exclusion", report::to_json(corner)},
                       {"corner_a", corner_a},
                       {"side_face_floor", report::to_json(floor)},
                       {"pass", ok}});
  }
  json rep = {{"landscape", m.spec.name()}, {"J_box", j_box}, {"ratio_tolerance", ratio_tol}, {"saddles", saddles}};
  return out.finish(std::move(rep), pass);
}

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {"analyze", "predict", "simulate", "compare", "gibbs", "saddle-check"};
  return names;
}

int run(const std::string& command, const Options& opts, std::ostream& out, std::ostream& err) {
  using Fn = CommandResult (*)(const json&, const Options&);
  static const std::vector<std::pair<std::string, Fn>> table = {
      {"analyze", cmd_analyze}, {"predict", cmd_predict}, {"simulate", cmd_simulate},
      {"compare", cmd_compare}, {"gibbs", cmd_gibbs},     {"saddle-check", cmd_saddle_check}};
  const auto it = std::find_if(table.begin(), table.end(), [&](const auto& e) { return e.first == command; });
  if (it == table.end()) {
    err << "error: unknown command '" << command << "'\n";
    return kExitUsage;
  }
  try {
    const json config = io::read_json_file(opts.config_path);
    const CommandResult r = it->second(config, opts);
    out << command << ": " << (r.pass ? "PASS" : "FAIL") << "\n" << "output: " << r.output_dir.string() << "\n";
    if (r.exit_code != kExitOk && r.report.contains("error"))
      err << "error: " << r.report["error"].get<std::string>() << "\n";
    return r.exit_code;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::kConfig ? kExitUsage : kExitModel;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitModel;
  }
}

}  // namespace metastab::cli
