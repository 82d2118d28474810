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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "rectsurf/io.hpp"

using namespace rectsurf;

namespace {

RunConfig base_config() {
  RunConfig config;
  config.command = "sweep";
  config.dx = 3;
  config.dz_list = {3};
  config.delta = Bias::finite(2);
  config.kappa_min = 0.01;
  config.kappa_max = 0.02;
  config.points = 2;
  config.trials = 50;
  config.seed = 42;
  config.workers = 1;
  return config;
}

}  // namespace

TEST_CASE("config validation catches inconsistent requests") {
  RunConfig config = base_config();
  CHECK_NOTHROW(validate_config(config));

  SUBCASE("even distance") {
    config.dx = 4;
    CHECK_THROWS_AS(validate_config(config), std::invalid_argument);
  }
  SUBCASE("distance below 3 in the dz list") {
    config.dz_list = {5, 1};
    CHECK_THROWS_AS(validate_config(config), std::invalid_argument);
  }
  SUBCASE("bias below one") {
    config.delta = Bias::finite(0.25);
    CHECK_THROWS_AS(validate_config(config), std::invalid_argument);
  }
  SUBCASE("bad kappa range") {
    config.kappa_min = 0.05;
    config.kappa_max = 0.01;
    CHECK_THROWS_AS(validate_config(config), std::invalid_argument);
  }
  SUBCASE("bad format") {
    config.format = "yaml";
    CHECK_THROWS_AS(validate_config(config), std::invalid_argument);
  }
  SUBCASE("negative workers") {
    config.workers = -2;
    CHECK_THROWS_AS(validate_config(config), std::invalid_argument);
  }
  SUBCASE("zero trials") {
    config.trials = 0;
    CHECK_THROWS_AS(validate_config(config), std::invalid_argument);
  }
}

TEST_CASE("sweep CSV matches the golden bytes") {
  // Freezes both the schema (column order, metadata lines) and the seeded
  // RNG stream; any change to either is a deliberate format break.
  const char* expected =
      "# rectsurf sweep\n"
      "# dx=3\n"
      "# dz=3\n"
      "# delta=2\n"
      "# trials=50\n"
      "# seed=42\n"
      "# generator=splitmix64\n"
      "# counting=any\n"
      "dx,dz,delta,kappa,p,trials,x_failures,z_failures,any_failures,"
      "p_logical,stderr\n"
      "3,3,2,0.01,0.077255305572079908,50,1,3,4,0.080000000000000002,"
      "0.03836665218650176\n"
      "3,3,2,0.02,0.1492369774182144,50,3,8,11,0.22,0.058583274063507239\n";
  std::ostringstream out;
  REQUIRE(cmd_sweep(base_config(), out) == kExitOk);
  CHECK(out.str() == expected);
}

TEST_CASE("sweep output is byte-identical across worker counts") {
  RunConfig one = base_config();
  one.trials = 2000;
  one.points = 4;
  RunConfig three = one;
  three.workers = 3;
  std::ostringstream out_one, out_three;
  REQUIRE(cmd_sweep(one, out_one) == kExitOk);
  REQUIRE(cmd_sweep(three, out_three) == kExitOk);
  CHECK(out_one.str() == out_three.str());
}

TEST_CASE("sweep JSON round-trips") {
  const SurfaceCode code = build_code({3, 5});
  const SweepResult original =
      sweep_curve(code, Bias::inf(), geometric_grid(1e-3, 2e-2, 5), 300,
                  RngSeed{7}, 2);
  const nlohmann::json j = sweep_to_json(original);
  const SweepResult parsed = sweep_from_json(j);
  CHECK(parsed.distances.dx == original.distances.dx);
  CHECK(parsed.distances.dz == original.distances.dz);
  CHECK(parsed.delta == original.delta);
  CHECK(parsed.seed == original.seed);
  CHECK(parsed.trials == original.trials);
  CHECK(parsed.generator == original.generator);
  CHECK(parsed.counting == original.counting);
  REQUIRE(parsed.points.size() == original.points.size());
  for (std::size_t i = 0; i < parsed.points.size(); ++i) {
    CHECK(parsed.points[i] == original.points[i]);
  }

  // Byte-level stability through a serialize/parse/serialize cycle.
  CHECK(sweep_to_json(parsed).dump() == j.dump());
}

TEST_CASE("code info output") {
  RunConfig config = base_config();
  config.command = "code-info";
  config.dz_list = {5};
  std::ostringstream out;
  REQUIRE(run_command(config, out, out) == kExitOk);
  const std::string text = out.str();
  CHECK(text.find("8 X-stabilizers, 6 Z-stabilizers") != std::string::npos);
  CHECK(text.find("data qubits: 15") != std::string::npos);
  CHECK(text.find("t_x=1 t_z=2") != std::string::npos);
  CHECK(text.find("40%") != std::string::npos);
  CHECK(text.find("{0,5,10}") != std::string::npos);
}

TEST_CASE("validation failures exit with code 2") {
  RunConfig config = base_config();
  config.command = "code-info";
  config.dx = 4;
  std::ostringstream out, err;
  CHECK(run_command(config, out, err) == kExitValidation);
  CHECK(err.str().find("even") != std::string::npos);
}

TEST_CASE("decode-one reports the worked example") {
  RunConfig config = base_config();
  config.command = "decode-one";
  config.dz_list = {5};
  config.error_string = "Y6,Z3";
  std::ostringstream out;
  REQUIRE(run_command(config, out, out) == kExitOk);
  const std::string text = out.str();
  CHECK(text.find("x_defects: 4") != std::string::npos);
  CHECK(text.find("z_defects: 2") != std::string::npos);
  CHECK(text.find("x_syndrome: [0,1,1,1,1,0,0,0]") != std::string::npos);
  CHECK(text.find("z_syndrome: [0,1,1,0,0,0]") != std::string::npos);
  CHECK(text.find("x_fail: false") != std::string::npos);
  CHECK(text.find("z_fail: false") != std::string::npos);
}

TEST_CASE("decode-one with the identity and with a bad token") {
  RunConfig config = base_config();
  config.command = "decode-one";
  config.dz_list = {5};

  SUBCASE("empty error string") {
    config.error_string = "";
    std::ostringstream out;
    REQUIRE(run_command(config, out, out) == kExitOk);
    CHECK(out.str().find("error: I") != std::string::npos);
    CHECK(out.str().find("x_defects: 0") != std::string::npos);
  }
  SUBCASE("parse error names the token and exits 2") {
    config.error_string = "Q9";
    std::ostringstream out, err;
    CHECK(run_command(config, out, err) == kExitValidation);
    CHECK(err.str().find("Q9") != std::string::npos);
  }
}

TEST_CASE("threshold with curves that never cross exits 3") {
  RunConfig config = base_config();
  config.command = "threshold";
  config.dz_list = {5, 7};
  config.kappa_min = 1e-4;
  config.kappa_max = 2e-4;
  config.points = 3;
  config.trials = 40;  // all-zero failure counts: no usable crossing
  std::ostringstream out, err;
  CHECK(run_command(config, out, err) == kExitNoCrossing);
  CHECK(err.str().find("crossing") != std::string::npos);
}

TEST_CASE("unknown command exits 2") {
  RunConfig config = base_config();
  config.command = "frobnicate";
  std::ostringstream out, err;
  CHECK(run_command(config, out, err) == kExitValidation);
}

TEST_CASE("artifacts are written to files and io failures exit 4") {
  RunConfig config = base_config();
  config.command = "sweep";
  config.out_path = "/nonexistent-dir/sweep.csv";
  std::ostringstream out, err;
  CHECK(run_command(config, out, err) == kExitIo);
  CHECK(err.str().find("output file") != std::string::npos);
}

TEST_CASE("threshold report JSON carries the estimate") {
  ThresholdEstimate est;
  est.value = 0.25;
  est.bracket_lo = 0.2;
  est.bracket_hi = 0.3;
  est.std_error = 0.01;
  est.method = "test";
  est.curves = {"[3,5] delta=1"};
  const nlohmann::json j = threshold_to_json(est);
  CHECK(j.at("value").get<double>() == 0.25);
  CHECK(j.at("curves").size() == 1);
  CHECK(j.at("kind").get<std::string>() == "rectsurf-threshold");
}
