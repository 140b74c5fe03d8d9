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

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "metastab/types.hpp"

namespace metastab::testing {

/// Random matrix instances for the matrix-lemma property suite.
class InstanceGenerator {
 public:
  explicit InstanceGenerator(std::uint64_t seed) : rng_(seed) {}

  Matrix gaussian(int rows, int cols);
  Matrix orthogonal(int d);
  /// Q diag(w) Q^T with |w_i| in [0.5, 3]; the first `negatives` entries negative.
  Matrix symmetric_with_signature(int d, int negatives);
  Matrix spd(int d) { return symmetric_with_signature(d, 0); }
  Matrix skew(int d);
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

 private:
  std::mt19937_64 rng_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

struct LemmaOutcome {
  std::string name;
  int trials = 0;
  int failures = 0;
  std::string first_failure;
};

/// Runs `trials` instances per lemma, cycling d over 2..10.
std::vector<LemmaOutcome> run_lemma_suite(int trials, std::uint64_t seed);

}  // namespace metastab::testing
