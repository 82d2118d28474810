// Copyright 2026 rectsurf contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "rectsurf/experiments.hpp"
#include "rectsurf/noise.hpp"

namespace rectsurf {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitValidation = 2,
  kExitNoCrossing = 3,
  kExitIo = 4,
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Parsed command-line request; validated before any computation starts.
struct RunConfig {
  std::string command;
  int dx = 3;
  std::vector<int> dz_list = {3};
  Bias delta = Bias::finite(1.0);
  double kappa_min = 1e-4;
  double kappa_max = 5.5e-2;
  int points = 25;
  std::uint64_t trials = 50000;
  std::uint64_t seed = 1;
  int workers = 0;  // 0 = auto
  std::string out_path;
  std::string format = "csv";  // csv | json
  std::string error_string;    // decode-one
  int delta_max = 10;          // crossover-scan
  double refine_tolerance = 0.002;

  int dz() const { return dz_list.at(0); }
};

/// Throws std::invalid_argument on any inconsistent field.
void validate_config(const RunConfig& config);

std::string format_double(double v);

/// CSV with `# key=value` metadata lines followed by the fixed column set
/// dx,dz,delta,kappa,p,trials,x_failures,z_failures,any_failures,
/// p_logical,stderr.
std::string sweep_to_csv(const SweepResult& result);

nlohmann::json sweep_to_json(const SweepResult& result);
SweepResult sweep_from_json(const nlohmann::json& j);

nlohmann::json threshold_to_json(const ThresholdEstimate& est);

/// Writes text to out_path, or to fallback when out_path is empty.
/// Throws IoError on failure.
void write_artifact(const std::string& out_path, const std::string& text,
                    std::ostream& fallback);

// Subcommand bodies. Each writes human-readable output to `out` and
// returns an ExitCode; CLI parsing lives in the tool binary.
int cmd_code_info(const RunConfig& config, std::ostream& out);
int cmd_sweep(const RunConfig& config, std::ostream& out);
int cmd_pseudo_threshold(const RunConfig& config, std::ostream& out);
int cmd_threshold(const RunConfig& config, std::ostream& out);
int cmd_crossover_scan(const RunConfig& config, std::ostream& out);
int cmd_decode_one(const RunConfig& config, std::ostream& out);

/// Dispatches on config.command with unified exception-to-exit-code mapping.
int run_command(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace rectsurf
