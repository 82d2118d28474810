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

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "rectsurf/io.hpp"

namespace {

struct RawArgs {
  rectsurf::RunConfig config;
  std::string delta_text = "1";
  std::string dz_text;
};

void add_common_flags(CLI::App* cmd, RawArgs& args, bool with_grid) {
  cmd->add_option("--dx", args.config.dx, "bit-flip distance (odd, >= 3)");
  cmd->add_option("--seed", args.config.seed, "master RNG seed");
  cmd->add_option("--workers", args.config.workers,
                  "worker threads (0 = auto)");
  cmd->add_option("--out", args.config.out_path, "output file path");
  cmd->add_option("--format", args.config.format, "output format: csv|json");
  if (with_grid) {
    cmd->add_option("--delta", args.delta_text,
                    "channel bias: number >= 1, \"inf\", or \"purex\"");
    cmd->add_option("--kappa-min", args.config.kappa_min,
                    "lowest per-step error rate");
    cmd->add_option("--kappa-max", args.config.kappa_max,
                    "highest per-step error rate");
    cmd->add_option("--points", args.config.points, "kappa grid size");
    cmd->add_option("--trials", args.config.trials, "Monte Carlo trials per point");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "rectsurf: rectangular surface-code simulator for biased Pauli noise "
      "with an exact minimum-weight perfect-matching decoder"};
  app.require_subcommand(1);

  RawArgs args;
  int single_dz = 3;

  CLI::App* code = app.add_subcommand("code", "lattice inspection");
  code->require_subcommand(1);
  CLI::App* info = code->add_subcommand("info", "print the code structure");
  info->add_option("--dx", args.config.dx, "bit-flip distance");
  info->add_option("--dz", single_dz, "phase-flip distance");

  CLI::App* sweep = app.add_subcommand(
      "sweep", "logical error rate curve over a kappa grid");
  add_common_flags(sweep, args, true);
  sweep->add_option("--dz", single_dz, "phase-flip distance");

  CLI::App* pseudo = app.add_subcommand(
      "pseudo-threshold", "crossing of P_L(p) with the identity line");
  add_common_flags(pseudo, args, true);
  pseudo->add_option("--dz", single_dz, "phase-flip distance");
  pseudo->add_option("--refine-tol", args.config.refine_tolerance,
                     "bracket width at which refinement stops");

  CLI::App* thresh = app.add_subcommand(
      "threshold", "crossing point of curves with increasing d_z");
  add_common_flags(thresh, args, true);
  thresh
      ->add_option("--dz-list", args.dz_text,
                   "comma-separated d_z values, e.g. 5,7,9,11")
      ->required();

  CLI::App* crossover = app.add_subcommand(
      "crossover-scan",
      "pseudo-threshold table for the canonical codes over delta = 1..N");
  add_common_flags(crossover, args, true);
  crossover->add_option("--delta-max", args.config.delta_max,
                        "largest integer bias scanned");
  crossover->add_option("--refine-tol", args.config.refine_tolerance,
                        "bracket width at which refinement stops");

  CLI::App* decode = app.add_subcommand(
      "decode-one", "trace one decode of a hand-written error");
  decode->add_option("--dx", args.config.dx, "bit-flip distance");
  decode->add_option("--dz", single_dz, "phase-flip distance");
  decode
      ->add_option("--error", args.config.error_string,
                   "Pauli string, e.g. \"Y6,Z3\" (empty = identity)")
      ->required();

  CLI11_PARSE(app, argc, argv);

  try {
    args.config.delta = rectsurf::Bias::from_string(args.delta_text);
    if (!args.dz_text.empty()) {
      args.config.dz_list.clear();
      std::size_t pos = 0;
      while (pos <= args.dz_text.size()) {
        std::size_t end = args.dz_text.find(',', pos);
        if (end == std::string::npos) end = args.dz_text.size();
        const std::string token = args.dz_text.substr(pos, end - pos);
        if (token.empty()) {
          throw std::invalid_argument("empty entry in --dz-list");
        }
        args.config.dz_list.push_back(std::stoi(token));
        pos = end + 1;
      }
    } else {
      args.config.dz_list = {single_dz};
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return rectsurf::kExitValidation;
  }

  if (info->parsed()) {
    args.config.command = "code-info";
  } else if (sweep->parsed()) {
    args.config.command = "sweep";
  } else if (pseudo->parsed()) {
    args.config.command = "pseudo-threshold";
  } else if (thresh->parsed()) {
    args.config.command = "threshold";
  } else if (crossover->parsed()) {
    args.config.command = "crossover-scan";
  } else if (decode->parsed()) {
    args.config.command = "decode-one";
  }

  return rectsurf::run_command(args.config, std::cout, std::cerr);
}
