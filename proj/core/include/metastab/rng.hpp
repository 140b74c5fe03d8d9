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

#include "metastab/types.hpp"

namespace metastab {

/// Human-readable description of the pinned generator, recorded in results.
inline constexpr const char* kRngDescription =
    "mt19937_64 per trajectory, seeds derived by splitmix64(master_seed, index), normals by Box-Muller";

/// One splitmix64 step: advances `state` and returns the mixed output.
std::uint64_t splitmix64(std::uint64_t& state);

/// Stream seed for trajectory `index`; depends only on (master_seed, index).
std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t index);

/// Standard normal sampler with a fixed algorithm (the standard library's
/// distributions are implementation-defined, so they are not used).
class NormalSampler {
 public:
  explicit NormalSampler(std::uint64_t seed) : gen_(seed) {}

  double operator()();
  void fill(Eigen::Ref<Vector> out);

 private:
  std::mt19937_64 gen_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace metastab
