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
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "metastab/kramers.hpp"
#include "metastab/landscape.hpp"
#include "metastab/topology.hpp"

namespace metastab::cli {

using nlohmann::json;

/// Stable process exit codes.
enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitModel = 2 };

struct Options {
  std::string config_path;  ///< recorded in the manifest
  std::filesystem::path out_dir = "out";
  std::uint64_t seed = 42;
  unsigned threads = 0;  ///< 0 = all hardware threads
  double tolerance = 0.25;
};

/// Outcome of one command: where it wrote, what it found, and whether every
/// check it performs passed.
struct CommandResult {
  int exit_code = kExitOk;
  std::filesystem::path output_dir;
  json report;
  std::vector<std::string> files;  ///< relative to output_dir, manifest included
  bool pass = true;
};

/// Everything the commands derive from the landscape part of a config.
struct Model {
  LandscapeSpec spec;
  Box box;
  std::vector<CriticalPoint> crits;
  CriticalPoint m0;
  std::optional<ValleyStructure> valley;  ///< set when the config names a level or targets
};

/// Landscape, box, critical points, start minimum and (optionally) the valley structure.
Model build_model(const json& config);

/// FNV-1a (64-bit, hex) of the canonical config dump plus seed and tolerance.
std::string config_hash(const json& config, const Options& opts);

CommandResult cmd_analyze(const json& config, const Options& opts);
CommandResult cmd_predict(const json& config, const Options& opts);
CommandResult cmd_simulate(const json& config, const Options& opts);
CommandResult cmd_compare(const json& config, const Options& opts);
CommandResult cmd_gibbs(const json& config, const Options& opts);
CommandResult cmd_saddle_check(const json& config, const Options& opts);

/// Command names in CLI order.
const std::vector<std::string>& command_names();

/// Loads the config, dispatches, and maps errors to exit codes (messages go to `err`).
int run(const std::string& command, const Options& opts, std::ostream& out, std::ostream& err);

}  // namespace metastab::cli
