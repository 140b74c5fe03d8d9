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

#include <random>

#include <benchmark/benchmark.h>

#include "metastab/catalog.hpp"
#include "metastab/kramers.hpp"
#include "metastab/rng.hpp"
#include "metastab/simulate.hpp"
#include "metastab/spectral.hpp"
#include "metastab/topology.hpp"

namespace {

using metastab::Matrix;
using metastab::Vector;

void BM_RealEigenvalues(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  std::mt19937_64 rng(7);
  std::normal_distribution<double> n;
  Matrix m(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m(i, j) = n(rng);
  for (auto _ : state) benchmark::DoNotOptimize(metastab::real_eigenvalues(m));
}
BENCHMARK(BM_RealEigenvalues)->Arg(2)->Arg(10)->Arg(64);

void BM_SaddleSpectrum(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  std::mt19937_64 rng(11);
  std::normal_distribution<double> n;
  Matrix a(d, d), s(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) a(i, j) = n(rng), s(i, j) = n(rng);
  s = s - s.transpose().eval();
  Vector w = Vector::LinSpaced(d, 1.0, 2.0);
  w[0] = -1.0;
  Eigen::HouseholderQR<Matrix> qr(a);
  const Matrix q = qr.householderQ();
  const Matrix h = q * w.asDiagonal() * q.transpose();
  const Matrix l = h.inverse() * s;
  for (auto _ : state) benchmark::DoNotOptimize(metastab::saddle_spectrum(h, l));
}
BENCHMARK(BM_SaddleSpectrum)->Arg(2)->Arg(10);

// Euler–Maruyama throughput on the 2D double well (steps per second).
void BM_EulerMaruyamaSteps(benchmark::State& state) {
  const auto spec = metastab::builtin_landscape("doublewell2d", metastab::planar_rotation_skew(1.0));
  metastab::SimConfig cfg;
  cfg.epsilon = 0.1;
  cfg.t_max = 10.0;
  cfg.guard_radius = 10.0;
  // A target no trajectory can reach turns hitting_time into a fixed-length run.
  const std::vector<metastab::Ball> nowhere{{Vector{{100.0, 0.0}}, 0.1}};
  const std::size_t steps = static_cast<std::size_t>(cfg.t_max / cfg.dt);
  std::uint64_t seed = 0;
  for (auto _ : state)
    benchmark::DoNotOptimize(metastab::hitting_time(Vector{{-1.0, 0.0}}, nowhere, spec, cfg, ++seed));
  state.SetItemsProcessed(static_cast<int64_t>(state.iterations() * steps));
}
BENCHMARK(BM_EulerMaruyamaSteps)->Unit(benchmark::kMillisecond);

void BM_PredictDoubleWell(benchmark::State& state) {
  const auto spec = metastab::builtin_landscape("doublewell2d", metastab::planar_rotation_skew(1.0));
  const auto& box = metastab::builtin_entry("doublewell2d").box;
  for (auto _ : state) {
    const auto crits = metastab::find_critical_points(spec, box);
    const auto& m0 = crits[metastab::nearest_critical_point(crits, Vector{{-1.0, 0.0}})];
    const auto vs = metastab::build_valley_structure(spec, crits, m0, 0.25, box);
    benchmark::DoNotOptimize(metastab::predict(vs, spec, {0.15, 0.12, 0.1}));
  }
}
BENCHMARK(BM_PredictDoubleWell)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
