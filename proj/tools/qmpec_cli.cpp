// Copyright 2026 The qmpec Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command line entry point: runs pipeline stages and exports figure data.

#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "qmpec/config.hpp"
#include "qmpec/error.hpp"
#include "qmpec/pipeline.hpp"

namespace {

constexpr int kExitValidation = 1;
constexpr int kExitNumerical = 2;

int run(const std::string& config_path, const std::string& stages, const std::string& out_dir) {
  const qmpec::Config raw = qmpec::Config::from_file(config_path);
  const qmpec::PipelineConfig config = qmpec::PipelineConfig::from_config(raw);
  qmpec::run_pipeline(config, qmpec::parse_stages(stages), out_dir, &std::cout);
  return 0;
}

int report(const std::string& bundle, const std::string& figure) {
  std::cout << qmpec::emit_figure_data(bundle, figure).string() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum memory-minimal models with error-mitigated simulation"};
  app.require_subcommand(1);

  std::string config_path;
  std::string stages;
  std::string out_dir = "out";
  CLI::App* run_cmd = app.add_subcommand("run", "Run pipeline stages from a config file");
  run_cmd->add_option("--config", config_path, "INI config file")->required()->check(CLI::ExistingFile);
  run_cmd->add_option("--stages", stages, "Comma-separated stages (default: all)");
  run_cmd->add_option("--out", out_dir, "Output directory");

  std::string bundle;
  std::string figure;
  CLI::App* report_cmd = app.add_subcommand("report", "Write figure data from a finished bundle");
  report_cmd->add_option("--bundle", bundle, "Bundle directory")->required()->check(CLI::ExistingDirectory);
  report_cmd->add_option("--figure", figure, "Figure data to export")
      ->required()
      ->check(CLI::IsMember({"joint_dist", "chunk_hist", "cq_vs_p"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  try {
    if (run_cmd->parsed()) return run(config_path, stages, out_dir);
    return report(bundle, figure);
  } catch (const qmpec::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const qmpec::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  }
}
