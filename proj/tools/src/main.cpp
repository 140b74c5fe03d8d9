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

#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "metastab/cli/commands.hpp"

int main(int argc, char** argv) {
  using metastab::cli::Options;
  CLI::App app{"metastab: Eyring–Kramers analysis and Monte Carlo validation for non-reversible Langevin dynamics"};
  app.require_subcommand(1);
  app.set_version_flag("--version", METASTAB_VERSION);

  Options opts;
  std::string out_dir = "out";
  const std::map<std::string, std::string> help = {
      {"analyze", "locate critical points, valley structure and certify the skew field"},
      {"predict", "Eyring-Kramers mean transition times along the epsilon ladder"},
      {"simulate", "Monte Carlo hitting-time ensembles and equilibrium potentials"},
      {"compare", "prediction vs simulation, with optional paired reversible runs"},
      {"gibbs", "long-run occupation histogram vs the Gibbs density"},
      {"saddle-check", "quadrature check of the saddle boundary-integral asymptotics"}};
  for (const auto& name : metastab::cli::command_names()) {
    CLI::App* sub = app.add_subcommand(name, help.at(name));
    sub->add_option("--config", opts.config_path, "JSON config file")->required();
    sub->add_option("--out", out_dir, "output root directory")->capture_default_str();
    sub->add_option("--seed", opts.seed, "master seed")->capture_default_str();
    sub->add_option("--threads", opts.threads, "worker cap (0 = all cores)")->capture_default_str();
    sub->add_option("--tolerance", opts.tolerance, "relative tolerance for compare")->capture_default_str();
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : metastab::cli::kExitUsage;
  }
  opts.out_dir = out_dir;
  const std::string command = app.get_subcommands().front()->get_name();
  return metastab::cli::run(command, opts, std::cout, std::cerr);
}
