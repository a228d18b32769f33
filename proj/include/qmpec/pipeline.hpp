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

#ifndef QMPEC_PIPELINE_HPP
#define QMPEC_PIPELINE_HPP

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "qmpec/config.hpp"
#include "qmpec/gst.hpp"
#include "qmpec/noise.hpp"

namespace qmpec {

enum class Stage { Generate = 0, Infer, Synthesize, Simulate, Mitigate, Report };

std::string stage_name(Stage stage);
Stage parse_stage(const std::string& name);
// Comma-separated stage names; empty means all. The stages must be a
// contiguous run of the canonical order.
std::vector<Stage> parse_stages(const std::string& list);

struct PipelineConfig {
  double process_p = 0.2;
  std::int64_t process_n = 100000;
  std::uint64_t process_seed = 1;
  int process_initial_state = 0;

  int infer_history = 0;  // 0: estimated effective Markov order
  std::optional<double> infer_delta_override;
  std::optional<double> infer_xi;
  int infer_max_order = 4;

  std::uint64_t synth_seed = 7;

  NoiseModel noise;

  GstShots gst_shots;
  std::uint64_t gst_seed = 11;

  std::int64_t mc_runs = 100000;
  std::int64_t mc_chunk_size = 0;
  std::uint64_t mc_seed = 2024;
  int mc_steps = 1;
  bool mc_records = false;

  double report_sigma_target = 0.02;

  // Rejects unknown keys and out-of-range values.
  static PipelineConfig from_config(const Config& config);
  void validate() const;

  // Every effective setting in canonical text form, defaults included.
  std::map<std::string, std::string> entries() const;
  // Hash over the keys read by this stage and all earlier ones.
  std::string stage_hash(Stage stage) const;
};

void run_pipeline(const PipelineConfig& config, const std::vector<Stage>& stages, const std::filesystem::path& out_dir,
                  std::ostream* log = nullptr);

// which: joint_dist, chunk_hist or cq_vs_p. Writes <which>.csv into the
// bundle directory and returns its path.
std::filesystem::path emit_figure_data(const std::filesystem::path& bundle, const std::string& which);

}  // namespace qmpec

#endif  // QMPEC_PIPELINE_HPP
