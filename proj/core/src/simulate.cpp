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

#include "metastab/simulate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include <boost/math/quadrature/gauss.hpp>

#include "metastab/errors.hpp"
#include "metastab/rng.hpp"
#include "metastab/spectral.hpp"

namespace metastab {

namespace {

constexpr double kMaxCensoredFraction = 0.2;

/// Allocation-free stepping state for one trajectory.
class Stepper {
 public:
  Stepper(const LandscapeSpec& spec, const SimConfig& cfg)
      : spec_(spec),
        sign_(cfg.adjoint ? -1.0 : 1.0),
        dt_(cfg.dt),
        noise_(std::sqrt(2.0 * cfg.epsilon * cfg.dt)),
        guard2_(cfg.guard_radius * cfg.guard_radius),
        ws_(spec.dim()),
        drift_(spec.dim()) {}

  /// x <- x - b(x) dt + sqrt(2 eps dt) g; returns false on a guard violation.
  bool advance(Vector& x, const Vector& g) {
    spec_.drift(x, sign_, drift_, ws_);
    x.noalias() -= dt_ * drift_;
    x.noalias() += noise_ * g;
    return x.squaredNorm() <= guard2_ && x.allFinite();
  }

 private:
  const LandscapeSpec& spec_;
  double sign_, dt_, noise_, guard2_;
  DriftWorkspace ws_;
  Vector drift_;
};

std::size_t step_cap(const SimConfig& cfg) { return static_cast<std::size_t>(std::ceil(cfg.t_max / cfg.dt - 1e-9)); }

[[noreturn]] void throw_guard(std::size_t steps, double guard) {
  std::ostringstream os;
  os << "trajectory left the guard ball of radius " << guard << " after " << steps << " steps";
  throw GuardViolation(os.str(), steps);
}

int ball_index(const Vector& x, const std::vector<Ball>& balls) {
  for (std::size_t i = 0; i < balls.size(); ++i)
    if (balls[i].contains(x)) return static_cast<int>(i);
  return -1;
}

void check_targets(const VectorCRef& start, const std::vector<Ball>& targets, int dim) {
  if (start.size() != dim || !start.allFinite())
    throw Error(ErrorCode::kContractViolation, "start point must be finite and match the landscape dimension");
  if (targets.empty()) throw Error(ErrorCode::kContractViolation, "at least one target ball is required");
  for (const auto& b : targets) {
    if (b.center.size() != dim || !(b.radius > 0.0))
      throw Error(ErrorCode::kContractViolation, "target balls need a positive radius and matching dimension");
    if (b.contains(start)) throw Error(ErrorCode::kContractViolation, "start point lies inside a target ball");
  }
}

}  // namespace

void SimConfig::validate() const {
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) throw Error(ErrorCode::kContractViolation, "epsilon must be >= 0");
  if (!(dt > 0.0)) throw Error(ErrorCode::kContractViolation, "dt must be positive");
  if (n_traj < 1) throw Error(ErrorCode::kContractViolation, "n_traj must be at least 1");
  if (!(radius() > 0.0)) throw Error(ErrorCode::kContractViolation, "ball_radius must be positive");
  if (!(t_max >= 10.0 * dt)) throw Error(ErrorCode::kContractViolation, "t_max must be at least 10 dt");
  if (!(guard_radius > 0.0)) throw Error(ErrorCode::kContractViolation, "guard_radius must be positive");
}

double default_dt(const std::vector<CriticalPoint>& points) {
  double lmax = 0.0;
  for (const auto& p : points) lmax = std::max(lmax, p.hessian_eigs.maxCoeff());
  return lmax > 0.0 ? std::min(1e-3, 0.1 / lmax) : 1e-3;
}

double default_guard_radius(const std::vector<CriticalPoint>& points) {
  double r = 0.0;
  for (const auto& p : points) r = std::max(r, p.x.norm());
  return 3.0 * (1.0 + r);
}

Vector step(const VectorCRef& x, const LandscapeSpec& spec, const SimConfig& cfg, const VectorCRef& gauss) {
  if (!x.allFinite()) throw Error(ErrorCode::kContractViolation, "step needs a finite point");
  Stepper s(spec, cfg);
  Vector y = x;
  const Vector g = gauss;
  if (!s.advance(y, g)) throw_guard(0, cfg.guard_radius);
  return y;
}

Hit hitting_time(const VectorCRef& start, const std::vector<Ball>& targets, const LandscapeSpec& spec,
                 const SimConfig& cfg, std::uint64_t seed) {
  cfg.validate();
  check_targets(start, targets, spec.dim());
  Stepper s(spec, cfg);
  NormalSampler normal(seed);
  Vector x = start;
  Vector g(spec.dim());
  const std::size_t cap = step_cap(cfg);
  for (std::size_t k = 1; k <= cap; ++k) {
    normal.fill(g);
    if (!s.advance(x, g)) throw_guard(k - 1, cfg.guard_radius);
    const int hit = ball_index(x, targets);
    if (hit >= 0) return {static_cast<double>(k) * cfg.dt, false, seed, hit};
  }
  return {static_cast<double>(cap) * cfg.dt, true, seed, -1};
}

void summarize(EnsembleResult& r) {
  std::size_t n = 0;
  double sum = 0.0;
  r.n_censored = 0;
  r.min = std::numeric_limits<double>::infinity();
  r.max = -std::numeric_limits<double>::infinity();
  for (const auto& h : r.trajectories) {  // index order for bit-stable sums
    if (h.censored) {
      ++r.n_censored;
      continue;
    }
    ++n;
    sum += h.time;
    r.min = std::min(r.min, h.time);
    r.max = std::max(r.max, h.time);
  }
  if (n == 0) {
    r.mean = r.std_error = r.ci_lo = r.ci_hi = r.min = r.max = std::numeric_limits<double>::quiet_NaN();
    return;
  }
  r.mean = std::clamp(sum / static_cast<double>(n), r.min, r.max);
  double ss = 0.0;
  for (const auto& h : r.trajectories)
    if (!h.censored) ss += (h.time - r.mean) * (h.time - r.mean);
  r.std_error = n > 1 ? std::sqrt(ss / static_cast<double>(n - 1) / static_cast<double>(n)) : 0.0;
  r.ci_lo = r.mean - 1.96 * r.std_error;
  r.ci_hi = r.mean + 1.96 * r.std_error;
}

void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn) {
  unsigned workers = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(n, 1)));
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  auto work = [&] {
    for (std::size_t i = next++; i < n && !failed.load(); i = next++) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
        failed = true;
      }
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
}

EnsembleResult run_ensemble(const VectorCRef& start, const std::vector<Ball>& targets, const LandscapeSpec& spec,
                            const SimConfig& cfg) {
  cfg.validate();
  check_targets(start, targets, spec.dim());
  EnsembleResult r;
  r.config = cfg;
  r.trajectories.resize(cfg.n_traj);
  parallel_for(cfg.n_traj, cfg.threads, [&](std::size_t i) {
    r.trajectories[i] = hitting_time(start, targets, spec, cfg, derive_seed(cfg.master_seed, i));
  });
  summarize(r);
  if (static_cast<double>(r.n_censored) > kMaxCensoredFraction * static_cast<double>(cfg.n_traj)) {
    std::ostringstream os;
    os << r.n_censored << " of " << cfg.n_traj << " trajectories reached t_max = " << cfg.t_max
       << " without hitting a target; increase t_max";
    throw Error(ErrorCode::kUnreliableEstimate, os.str());
  }
  return r;
}

namespace {

std::size_t bin_count(const std::vector<int>& bins, int dim) {
  if (static_cast<int>(bins.size()) != dim) throw Error(ErrorCode::kContractViolation, "one bin count per axis");
  std::size_t total = 1;
  for (int b : bins) {
    if (b < 1) throw Error(ErrorCode::kContractViolation, "bin counts must be positive");
    total *= static_cast<std::size_t>(b);
  }
  return total;
}

}  // namespace

std::vector<double> gibbs_reference(const LandscapeSpec& spec, double epsilon, const Box& box,
                                    const std::vector<int>& bins, int nodes_per_axis) {
  const int d = spec.dim();
  const std::size_t total = bin_count(bins, d);
  if (!(epsilon > 0.0)) throw Error(ErrorCode::kContractViolation, "Gibbs reference needs epsilon > 0");
  if (nodes_per_axis < 1 || nodes_per_axis > 20)
    throw Error(ErrorCode::kContractViolation, "nodes_per_axis must be in [1, 20]");

  // Gauss–Legendre nodes on [-1, 1].
  std::vector<double> nodes, weights;
  auto push = [&](const auto& abscissa, const auto& w, int n) {
    const int half = static_cast<int>(abscissa.size());
    for (int i = 0; i < half; ++i) {
      if (i == 0 && (n % 2 == 1)) {
        nodes.push_back(0.0);
        weights.push_back(w[0]);
        continue;
      }
      nodes.push_back(abscissa[i]);
      weights.push_back(w[i]);
      nodes.push_back(-abscissa[i]);
      weights.push_back(w[i]);
    }
  };
  using boost::math::quadrature::gauss;
  switch (nodes_per_axis) {
#define METASTAB_GL(N)                                                    \
  case N:                                                                 \
    push(gauss<double, N>::abscissa(), gauss<double, N>::weights(), N);   \
    break;
    METASTAB_GL(1) METASTAB_GL(2) METASTAB_GL(3) METASTAB_GL(4) METASTAB_GL(5) METASTAB_GL(6) METASTAB_GL(7)
    METASTAB_GL(8) METASTAB_GL(9) METASTAB_GL(10) METASTAB_GL(11) METASTAB_GL(12) METASTAB_GL(13) METASTAB_GL(14)
    METASTAB_GL(15) METASTAB_GL(16) METASTAB_GL(17) METASTAB_GL(18) METASTAB_GL(19) METASTAB_GL(20)
#undef METASTAB_GL
  }
  const int q = static_cast<int>(nodes.size());

  std::vector<double> log_mass(total);
  std::vector<int> idx(d, 0), node(d, 0);
  Vector x(d);
  const Vector width = box.widths();
  for (std::size_t b = 0; b < total; ++b) {
    std::size_t rem = b;
    for (int k = d - 1; k >= 0; --k) {
      idx[k] = static_cast<int>(rem % bins[k]);
      rem /= bins[k];
    }
    // Accumulate exp(-U/eps) over the tensor nodes in log-sum-exp form.
    std::vector<double> terms;
    terms.reserve(static_cast<std::size_t>(std::pow(q, d)));
    std::fill(node.begin(), node.end(), 0);
    while (true) {
      double logw = 0.0;
      for (int k = 0; k < d; ++k) {
        const double h = width[k] / bins[k];
        const double lo = box.lo[k] + idx[k] * h;
        x[k] = lo + 0.5 * h * (nodes[node[k]] + 1.0);
        logw += std::log(0.5 * h * weights[node[k]]);
      }
      terms.push_back(logw - spec.value(x) / epsilon);
      int k = d - 1;
      while (k >= 0 && ++node[k] == q) node[k--] = 0;
      if (k < 0) break;
    }
    const double m = *std::max_element(terms.begin(), terms.end());
    double s = 0.0;
    for (double t : terms) s += std::exp(t - m);
    log_mass[b] = m + std::log(s);
  }
  const double m = *std::max_element(log_mass.begin(), log_mass.end());
  std::vector<double> mass(total);
  double z = 0.0;
  for (std::size_t b = 0; b < total; ++b) z += (mass[b] = std::exp(log_mass[b] - m));
  for (double& v : mass) v /= z;
  return mass;
}

double total_variation(const std::vector<double>& p, const std::vector<double>& q) {
  if (p.size() != q.size()) throw Error(ErrorCode::kContractViolation, "histograms differ in size");
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) s += std::abs(p[i] - q[i]);
  return 0.5 * s;
}

GibbsResult gibbs_histogram(const LandscapeSpec& spec, const SimConfig& cfg, const VectorCRef& start, double burn_in,
                            double duration, const Box& box, const std::vector<int>& bins) {
  cfg.validate();
  const int d = spec.dim();
  const std::size_t total = bin_count(bins, d);
  if (!(burn_in >= 0.0) || !(duration > burn_in))
    throw Error(ErrorCode::kContractViolation, "gibbs_histogram needs duration > burn_in >= 0");
  if (box.dim() != d || start.size() != d) throw Error(ErrorCode::kContractViolation, "box/start dimension mismatch");

  GibbsResult r;
  r.bins = bins;
  std::vector<std::size_t> counts(total, 0);
  Stepper s(spec, cfg);
  NormalSampler normal(derive_seed(cfg.master_seed, 0));
  Vector x = start;
  Vector g(d);
  const auto burn_steps = static_cast<std::size_t>(std::llround(burn_in / cfg.dt));
  const auto steps = static_cast<std::size_t>(std::llround(duration / cfg.dt));
  const Vector width = box.widths();
  for (std::size_t k = 1; k <= burn_steps + steps; ++k) {
    normal.fill(g);
    if (!s.advance(x, g)) throw_guard(k - 1, cfg.guard_radius);
    if (k <= burn_steps) continue;
    std::size_t flat = 0;
    bool inside = true;
    for (int a = 0; a < d; ++a) {
      const double u = (x[a] - box.lo[a]) / width[a];
      if (!(u >= 0.0 && u < 1.0)) {
        inside = false;
        break;
      }
      flat = flat * bins[a] + std::min(bins[a] - 1, static_cast<int>(u * bins[a]));
    }
    if (inside) {
      ++counts[flat];
      ++r.n_samples;
    } else {
      ++r.n_outside;
    }
  }
  if (r.n_samples == 0) throw Error(ErrorCode::kNumericFailure, "no samples fell inside the histogram box");
  r.empirical.resize(total);
  for (std::size_t b = 0; b < total; ++b)
    r.empirical[b] = static_cast<double>(counts[b]) / static_cast<double>(r.n_samples);
  r.reference = gibbs_reference(spec, cfg.epsilon, box, bins);
  r.tv_distance = total_variation(r.empirical, r.reference);
  return r;
}

EquilibriumEstimate equilibrium_potential(const VectorCRef& x, const std::vector<Ball>& a, const std::vector<Ball>& b,
                                          const LandscapeSpec& spec, const SimConfig& cfg) {
  cfg.validate();
  std::vector<Ball> all = a;
  all.insert(all.end(), b.begin(), b.end());
  check_targets(x, all, spec.dim());
  if (a.empty() || b.empty()) throw Error(ErrorCode::kContractViolation, "A and B must both be non-empty");
  for (const auto& ba : a)
    for (const auto& bb : b)
      if ((ba.center - bb.center).norm() < ba.radius + bb.radius)
        throw Error(ErrorCode::kContractViolation, "A and B must be disjoint");

  std::vector<Hit> hits(cfg.n_traj);
  parallel_for(cfg.n_traj, cfg.threads,
               [&](std::size_t i) { hits[i] = hitting_time(x, all, spec, cfg, derive_seed(cfg.master_seed, i)); });
  EquilibriumEstimate e;
  for (const auto& h : hits) {
    if (h.censored)
      ++e.n_censored;
    else if (h.target < static_cast<int>(a.size()))
      ++e.n_a;
    else
      ++e.n_b;
  }
  if (static_cast<double>(e.n_censored) > kMaxCensoredFraction * static_cast<double>(cfg.n_traj)) {
    std::ostringstream os;
    os << e.n_censored << " of " << cfg.n_traj << " trajectories hit neither A nor B before t_max = " << cfg.t_max
       << "; increase t_max";
    throw Error(ErrorCode::kUnreliableEstimate, os.str());
  }
  const double n = static_cast<double>(e.n_a + e.n_b);
  e.p_a = static_cast<double>(e.n_a) / n;
  e.p_b = 1.0 - e.p_a;
  // Wilson score interval.
  const double z = 1.96, z2 = z * z;
  const double centre = (e.p_a + z2 / (2.0 * n)) / (1.0 + z2 / n);
  const double half = z / (1.0 + z2 / n) * std::sqrt(e.p_a * (1.0 - e.p_a) / n + z2 / (4.0 * n * n));
  e.ci_lo = std::max(0.0, centre - half);
  e.ci_hi = std::min(1.0, centre + half);
  return e;
}

}  // namespace metastab
