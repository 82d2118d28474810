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

#include "rectsurf/io.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "rectsurf/decoder.hpp"
#include "rectsurf/pauli.hpp"

namespace rectsurf {

namespace {

std::string support_to_string(const std::vector<int>& support) {
  std::string out = "{";
  for (std::size_t i = 0; i < support.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(support[i]);
  }
  return out + "}";
}

std::string bits_to_string(const BitVec& bits) {
  std::string out = "[";
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (i) out += ',';
    out += bits.test(i) ? '1' : '0';
  }
  return out + "]";
}

std::vector<double> config_grid(const RunConfig& config) {
  return geometric_grid(config.kappa_min, config.kappa_max, config.points);
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void validate_config(const RunConfig& config) {
  if (config.dz_list.empty()) {
    throw std::invalid_argument("at least one d_z value is required");
  }
  validate_distances({config.dx, config.dz_list[0]});
  for (int dz : config.dz_list) validate_distances({config.dx, dz});
  if (config.delta.kind == Bias::Kind::Finite && config.delta.value < 1.0) {
    throw std::invalid_argument(
        "bias delta must be >= 1 (swap d_x and d_z for bit-flip-biased "
        "channels)");
  }
  if (!(config.kappa_min > 0.0) || !(config.kappa_max >= config.kappa_min) ||
      !(config.kappa_max <= 1.0)) {
    throw std::invalid_argument("kappa range must satisfy 0 < min <= max <= 1");
  }
  if (config.points < 1) throw std::invalid_argument("points must be >= 1");
  if (config.trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (config.workers < 0) throw std::invalid_argument("workers must be >= 0");
  if (config.format != "csv" && config.format != "json") {
    throw std::invalid_argument("format must be csv or json");
  }
  if (config.delta_max < 1) throw std::invalid_argument("delta max must be >= 1");
  if (!(config.refine_tolerance > 0.0)) {
    throw std::invalid_argument("refine tolerance must be positive");
  }
}

std::string sweep_to_csv(const SweepResult& result) {
  std::string out;
  out += "# rectsurf sweep\n";
  out += "# dx=" + std::to_string(result.distances.dx) + "\n";
  out += "# dz=" + std::to_string(result.distances.dz) + "\n";
  out += "# delta=" + result.delta.to_string() + "\n";
  out += "# trials=" + std::to_string(result.trials) + "\n";
  out += "# seed=" + std::to_string(result.seed) + "\n";
  out += "# generator=" + result.generator + "\n";
  out += "# counting=" + result.counting + "\n";
  out +=
      "dx,dz,delta,kappa,p,trials,x_failures,z_failures,any_failures,"
      "p_logical,stderr\n";
  for (const auto& pt : result.points) {
    out += std::to_string(result.distances.dx) + ",";
    out += std::to_string(result.distances.dz) + ",";
    out += result.delta.to_string() + ",";
    out += format_double(pt.kappa) + ",";
    out += format_double(pt.p) + ",";
    out += std::to_string(pt.trials) + ",";
    out += std::to_string(pt.x_failures) + ",";
    out += std::to_string(pt.z_failures) + ",";
    out += std::to_string(pt.any_failures) + ",";
    out += format_double(pt.p_logical) + ",";
    out += format_double(pt.std_error) + "\n";
  }
  return out;
}

nlohmann::json sweep_to_json(const SweepResult& result) {
  nlohmann::json points = nlohmann::json::array();
  for (const auto& pt : result.points) {
    points.push_back({{"kappa", pt.kappa},
                      {"p", pt.p},
                      {"trials", pt.trials},
                      {"x_failures", pt.x_failures},
                      {"z_failures", pt.z_failures},
                      {"any_failures", pt.any_failures},
                      {"p_logical", pt.p_logical},
                      {"stderr", pt.std_error}});
  }
  return nlohmann::json{{"kind", "rectsurf-sweep"},
                        {"dx", result.distances.dx},
                        {"dz", result.distances.dz},
                        {"delta", result.delta.to_string()},
                        {"trials", result.trials},
                        {"seed", result.seed},
                        {"generator", result.generator},
                        {"counting", result.counting},
                        {"points", points}};
}

SweepResult sweep_from_json(const nlohmann::json& j) {
  SweepResult result;
  result.distances.dx = j.at("dx").get<int>();
  result.distances.dz = j.at("dz").get<int>();
  result.delta = Bias::from_string(j.at("delta").get<std::string>());
  result.trials = j.at("trials").get<std::uint64_t>();
  result.seed = j.at("seed").get<std::uint64_t>();
  result.generator = j.at("generator").get<std::string>();
  result.counting = j.at("counting").get<std::string>();
  for (const auto& jp : j.at("points")) {
    SweepPoint pt;
    pt.kappa = jp.at("kappa").get<double>();
    pt.p = jp.at("p").get<double>();
    pt.trials = jp.at("trials").get<std::uint64_t>();
    pt.x_failures = jp.at("x_failures").get<std::uint64_t>();
    pt.z_failures = jp.at("z_failures").get<std::uint64_t>();
    pt.any_failures = jp.at("any_failures").get<std::uint64_t>();
    pt.p_logical = jp.at("p_logical").get<double>();
    pt.std_error = jp.at("stderr").get<double>();
    result.points.push_back(pt);
  }
  return result;
}

nlohmann::json threshold_to_json(const ThresholdEstimate& est) {
  return nlohmann::json{{"kind", "rectsurf-threshold"},
                        {"value", est.value},
                        {"bracket_lo", est.bracket_lo},
                        {"bracket_hi", est.bracket_hi},
                        {"stderr", est.std_error},
                        {"method", est.method},
                        {"curves", est.curves}};
}

void write_artifact(const std::string& out_path, const std::string& text,
                    std::ostream& fallback) {
  if (out_path.empty()) {
    fallback << text;
    return;
  }
  std::ofstream file(out_path, std::ios::binary);
  if (!file) throw IoError("cannot open output file " + out_path);
  file << text;
  if (!file) throw IoError("failed writing output file " + out_path);
}

int cmd_code_info(const RunConfig& config, std::ostream& out) {
  const SurfaceCode code = build_code({config.dx, config.dz()});
  const auto [tx, tz] = correctable_weights(code);
  out << "surface code [" << config.dx << "," << config.dz() << "]\n";
  out << "data qubits: " << code.n_data << "\n";
  out << code.x_stabilizers.size() << " X-stabilizers, "
      << code.z_stabilizers.size() << " Z-stabilizers\n";
  out << "correctable weights: t_x=" << tx << " t_z=" << tz << "\n";
  if (config.dz() >= config.dx) {
    out << "qubit savings vs [" << config.dz() << "," << config.dz()
        << "]: " << format_double(qubit_savings_percent(code.distances))
        << "%\n";
  }
  for (std::size_t i = 0; i < code.x_stabilizers.size(); ++i) {
    out << "X" << i << " " << support_to_string(code.x_stabilizers[i].support)
        << "\n";
  }
  for (std::size_t i = 0; i < code.z_stabilizers.size(); ++i) {
    out << "Z" << i << " " << support_to_string(code.z_stabilizers[i].support)
        << "\n";
  }
  out << "logical X representatives (columns):";
  for (const auto& rep : code.logical_x_reps) out << " " << support_to_string(rep);
  out << "\n";
  out << "logical Z representatives (rows):";
  for (const auto& rep : code.logical_z_reps) out << " " << support_to_string(rep);
  out << "\n";
  return kExitOk;
}

int cmd_sweep(const RunConfig& config, std::ostream& out) {
  const SurfaceCode code = build_code({config.dx, config.dz()});
  const SweepResult result =
      sweep_curve(code, config.delta, config_grid(config), config.trials,
                  RngSeed{config.seed}, config.workers);
  const std::string text = (config.format == "json")
                               ? sweep_to_json(result).dump(2) + "\n"
                               : sweep_to_csv(result);
  write_artifact(config.out_path, text, out);
  return kExitOk;
}

namespace {

void print_threshold_report(const ThresholdEstimate& est, const char* name,
                            std::ostream& out) {
  out << name << " = " << format_double(est.value) << "\n";
  out << "bracket: [" << format_double(est.bracket_lo) << ", "
      << format_double(est.bracket_hi) << "]\n";
  out << "stderr: " << format_double(est.std_error) << "\n";
  out << "method: " << est.method << "\n";
  for (const auto& label : est.curves) out << "curve: " << label << "\n";
  for (const auto& pc : est.pair_crossings) {
    out << "crossing " << pc.label << ": " << format_double(pc.value) << " +- "
        << format_double(pc.sigma) << "\n";
  }
}

}  // namespace

int cmd_pseudo_threshold(const RunConfig& config, std::ostream& out) {
  const SurfaceCode code = build_code({config.dx, config.dz()});
  RefineOptions opts;
  opts.bracket_tolerance = config.refine_tolerance;
  const ThresholdEstimate est = pseudo_threshold_refined(
      code, config.delta, config_grid(config), config.trials,
      RngSeed{config.seed}, config.workers, opts);
  print_threshold_report(est, "pseudo-threshold gamma", out);
  if (!config.out_path.empty()) {
    write_artifact(config.out_path, threshold_to_json(est).dump(2) + "\n", out);
  }
  return kExitOk;
}

int cmd_threshold(const RunConfig& config, std::ostream& out) {
  if (config.dz_list.size() < 2) {
    throw std::invalid_argument("threshold needs --dz-list with >= 2 values");
  }
  const auto grid = config_grid(config);
  std::vector<SweepResult> curves;
  std::uint64_t tag = 0;
  for (int dz : config.dz_list) {
    const SurfaceCode code = build_code({config.dx, dz});
    curves.push_back(sweep_curve(code, config.delta, grid, config.trials,
                                 derive_seed(RngSeed{config.seed}, tag),
                                 config.workers));
    ++tag;
  }
  const ThresholdEstimate est = threshold(curves);
  print_threshold_report(est, "threshold gamma*", out);
  if (!config.out_path.empty()) {
    write_artifact(config.out_path, threshold_to_json(est).dump(2) + "\n", out);
  }
  return kExitOk;
}

int cmd_crossover_scan(const RunConfig& config, std::ostream& out) {
  RefineOptions opts;
  opts.bracket_tolerance = config.refine_tolerance;
  const CrossoverTable table = crossover_scan(
      default_crossover_codes(), config.delta_max, config_grid(config),
      config.trials, RngSeed{config.seed}, config.workers, opts);
  out << "delta";
  for (const auto& d : default_crossover_codes()) {
    out << ",gamma_" << d.dx << "_" << d.dz;
  }
  out << "\n";
  nlohmann::json cells = nlohmann::json::array();
  const int n_codes = static_cast<int>(default_crossover_codes().size());
  for (std::size_t i = 0; i < table.cells.size(); ++i) {
    if (i % n_codes == 0) {
      if (i) out << "\n";
      out << table.cells[i].delta;
    }
    out << "," << format_double(table.cells[i].gamma.value);
    cells.push_back({{"dx", table.cells[i].distances.dx},
                     {"dz", table.cells[i].distances.dz},
                     {"delta", table.cells[i].delta},
                     {"gamma", table.cells[i].gamma.value},
                     {"stderr", table.cells[i].gamma.std_error}});
  }
  out << "\n";
  if (table.crossover_delta > 0) {
    out << "crossover delta: " << table.crossover_delta << "\n";
  } else {
    out << "crossover delta: not reached within scanned range\n";
  }
  if (!config.out_path.empty()) {
    nlohmann::json doc{{"kind", "rectsurf-crossover"},
                       {"cells", cells},
                       {"crossover_delta", table.crossover_delta}};
    write_artifact(config.out_path, doc.dump(2) + "\n", out);
  }
  return kExitOk;
}

int cmd_decode_one(const RunConfig& config, std::ostream& out) {
  const SurfaceCode code = build_code({config.dx, config.dz()});
  const Decoder decoder(code);
  const PauliError error =
      parse_pauli(config.error_string, static_cast<std::size_t>(code.n_data));
  const Syndrome syndrome = decoder.measure(error);

  out << "code [" << config.dx << "," << config.dz() << "]\n";
  out << "error: " << format_pauli(error) << "\n";
  out << "x_syndrome: " << bits_to_string(syndrome.x_bits) << "\n";
  out << "z_syndrome: " << bits_to_string(syndrome.z_bits) << "\n";
  out << "x_defects: " << syndrome.x_bits.count() << "\n";
  out << "z_defects: " << syndrome.z_bits.count() << "\n";

  const auto print_matching = [&](GraphKind kind, const BitVec& bits,
                                  const char* name, char stab_letter) {
    const auto& graph = decoder.graph(kind);
    std::vector<int> defects;
    for (std::size_t i = 0; i < bits.size(); ++i) {
      if (bits.test(i)) defects.push_back(static_cast<int>(i));
    }
    const auto inst = all_pairs_defect_distances(graph, defects);
    const auto matching = min_weight_perfect_matching(inst);
    out << name << ":";
    for (const auto& pair : matching.pairs) {
      const int u = inst.defects[pair.a];
      out << " (" << stab_letter << u << ",";
      if (pair.b == kBoundary) {
        out << "boundary";
      } else {
        out << stab_letter << inst.defects[pair.b];
      }
      const int v = pair.b == kBoundary ? graph.boundary() : inst.defects[pair.b];
      out << ") w=" << graph.distance(u, v);
    }
    if (matching.pairs.empty()) out << " none";
    out << " total=" << matching.total_weight << "\n";
  };
  // X defects locate Z errors and vice versa.
  print_matching(GraphKind::XGraph, syndrome.x_bits, "matching X-graph", 'X');
  print_matching(GraphKind::ZGraph, syndrome.z_bits, "matching Z-graph", 'Z');

  const PauliError correction = decoder.decode(syndrome);
  const PauliError residual = compose(error, correction);
  const auto [x_fail, z_fail] = decoder.classify(residual);
  out << "correction: " << format_pauli(correction) << "\n";
  out << "residual: " << format_pauli(residual) << "\n";
  out << "x_fail: " << (x_fail ? "true" : "false") << "\n";
  out << "z_fail: " << (z_fail ? "true" : "false") << "\n";
  return kExitOk;
}

int run_command(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    validate_config(config);
    if (config.command == "code-info") return cmd_code_info(config, out);
    if (config.command == "sweep") return cmd_sweep(config, out);
    if (config.command == "pseudo-threshold") {
      return cmd_pseudo_threshold(config, out);
    }
    if (config.command == "threshold") return cmd_threshold(config, out);
    if (config.command == "crossover-scan") {
      return cmd_crossover_scan(config, out);
    }
    if (config.command == "decode-one") return cmd_decode_one(config, out);
    throw std::invalid_argument("unknown command " + config.command);
  } catch (const NoCrossingError& e) {
    err << "error: " << e.what() << "\n";
    return kExitNoCrossing;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }
}

}  // namespace rectsurf
