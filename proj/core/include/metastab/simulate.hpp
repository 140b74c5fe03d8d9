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

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "metastab/landscape.hpp"
#include "metastab/topology.hpp"

namespace metastab {

/// Settings shared by every stochastic run.
struct SimConfig {
  double epsilon = 0.1;
  double dt = 1e-3;
  std::size_t n_traj = 1000;
  std::uint64_t master_seed = 42;
  std::optional<double> ball_radius;  ///< defaults to epsilon
  double t_max = 1e4;
  double guard_radius = 1e3;
  bool adjoint = false;     ///< drift -(grad U - ell) instead of -(grad U + ell)
  unsigned threads = 0;     ///< 0 = hardware concurrency

  double radius() const { return ball_radius.value_or(epsilon); }
  /// Throws kContractViolation on a broken invariant.
  void validate() const;
};

struct Ball {
  Vector center;
  double radius = 0.0;
  bool contains(const VectorCRef& x) const { return (x - center).squaredNorm() < radius * radius; }
};

/// Outcome of one trajectory.
struct Hit {
  double time = 0.0;  ///< hitting time, or t_max when censored
  bool censored = false;
  std::uint64_t seed = 0;
  int target = -1;    ///< index of the ball that was entered, -1 if censored
};

struct EnsembleResult {
  std::vector<Hit> trajectories;
  double mean = 0.0;
  double std_error = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 0.0;
  double min = 0.0;
  double max = 0.0;
  std::size_t n_censored = 0;
  SimConfig config;
};

/// Default step: min(1e-3, 0.1 / largest Hessian eigenvalue over the points).
double default_dt(const std::vector<CriticalPoint>& points);
/// Default guard: 3 (1 + max |c|) over the located critical points.
double default_guard_radius(const std::vector<CriticalPoint>& points);

/// One Euler–Maruyama step with the given standard normals.
/// Throws GuardViolation (steps = 0) when the new point leaves the guard ball.
Vector step(const VectorCRef& x, const LandscapeSpec& spec, const SimConfig& cfg, const VectorCRef& gauss);

/// First discrete time k dt at which the state lies in a target ball.
Hit hitting_time(const VectorCRef& start, const std::vector<Ball>& targets, const LandscapeSpec& spec,
                 const SimConfig& cfg, std::uint64_t seed);

/// n_traj independent trajectories; trajectory i uses derive_seed(master_seed, i).
/// Throws kUnreliableEstimate when more than 20% are censored.
EnsembleResult run_ensemble(const VectorCRef& start, const std::vector<Ball>& targets, const LandscapeSpec& spec,
                            const SimConfig& cfg);

/// Summary statistics over the uncensored entries (used by run_ensemble).
void summarize(EnsembleResult& r);

struct GibbsResult {
  std::vector<int> bins;       ///< bins per axis
  std::vector<double> empirical;  ///< row-major, last axis fastest; sums to 1
  std::vector<double> reference;  ///< Gibbs mass per bin normalized over the box
  double tv_distance = 0.0;
  std::size_t n_samples = 0;   ///< samples that fell inside the box
  std::size_t n_outside = 0;
};

/// Per-bin Gibbs mass of exp(-U/eps) over the box (tensor Gauss–Legendre), normalized.
std::vector<double> gibbs_reference(const LandscapeSpec& spec, double epsilon, const Box& box,
                                    const std::vector<int>& bins, int nodes_per_axis = 8);

/// Occupation histogram of one long trajectory started at `start` (seed
/// derive_seed(master_seed, 0)) against the Gibbs reference.
GibbsResult gibbs_histogram(const LandscapeSpec& spec, const SimConfig& cfg, const VectorCRef& start, double burn_in,
                            double duration, const Box& box, const std::vector<int>& bins);

double total_variation(const std::vector<double>& p, const std::vector<double>& q);

struct EquilibriumEstimate {
  double p_a = 0.0;  ///< fraction of uncensored trajectories hitting A first
  double p_b = 0.0;  ///< 1 - p_a
  std::size_t n_a = 0;
  std::size_t n_b = 0;
  std::size_t n_censored = 0;
  double ci_lo = 0.0;  ///< Wilson 95% interval for p_a
  double ci_hi = 0.0;
};

/// Monte Carlo estimate of P_x[tau_A < tau_B]. Throws kUnreliableEstimate when
/// more than 20% of the trajectories are censored.
EquilibriumEstimate equilibrium_potential(const VectorCRef& x, const std::vector<Ball>& a, const std::vector<Ball>& b,
                                          const LandscapeSpec& spec, const SimConfig& cfg);

/// Runs fn(i) for i in [0, n) on up to `threads` workers; the first failure by
/// index is rethrown after all workers stop.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn);

}  // namespace metastab
