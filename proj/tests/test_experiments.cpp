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

#include <cmath>

#include "rectsurf/experiments.hpp"

using namespace rectsurf;

namespace {

// Noise-free curve following an exact power law P_L = p^2 / 0.1, whose
// identity crossing sits at p = 0.1 by construction.
SweepResult synthetic_power_curve() {
  SweepResult curve;
  curve.distances = {3, 3};
  curve.delta = Bias::finite(1);
  curve.trials = 1000000;
  curve.counting = "any";
  for (const double p : {0.02, 0.05, 0.08, 0.13, 0.2, 0.3}) {
    SweepPoint pt;
    pt.p = p;
    pt.kappa = p_to_kappa(p);
    pt.trials = curve.trials;
    pt.p_logical = p * p / 0.1;
    pt.any_failures = static_cast<std::uint64_t>(
        std::llround(pt.p_logical * static_cast<double>(pt.trials)));
    pt.x_failures = pt.any_failures;
    pt.std_error = std::sqrt(pt.p_logical * (1.0 - pt.p_logical) /
                             static_cast<double>(pt.trials));
    curve.points.push_back(pt);
  }
  return curve;
}

}  // namespace

TEST_CASE("counting rule follows the channel species") {
  CHECK(counting_rule(make_pure_channel(0.1, PureKind::XOnly)) == "x-only");
  CHECK(counting_rule(make_pure_channel(0.1, PureKind::ZOnly)) == "z-only");
  CHECK(counting_rule(make_channel(0.1, Bias::inf())) == "z-only");
  CHECK(counting_rule(make_channel(0.1, Bias::finite(10))) == "any");
}

TEST_CASE("wilson interval behaves at the extremes") {
  const auto [lo0, hi0] = wilson_interval(0, 1000, 1.0);
  CHECK(lo0 == 0.0);
  CHECK(hi0 > 0.0);
  CHECK(hi0 < 0.01);

  const auto [lo, hi] = wilson_interval(500, 1000, 1.0);
  const double binom = std::sqrt(0.5 * 0.5 / 1000.0);
  CHECK(0.5 * (hi - lo) == doctest::Approx(binom).epsilon(0.01));
  CHECK(lo == doctest::Approx(0.5 - binom).epsilon(0.05));
}

TEST_CASE("geometric grid spans the requested range") {
  const auto grid = geometric_grid(1e-4, 5.5e-2, 25);
  REQUIRE(grid.size() == 25);
  CHECK(grid.front() == doctest::Approx(1e-4));
  CHECK(grid.back() == 5.5e-2);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    CHECK(grid[i] > grid[i - 1]);
    // Geometric spacing: constant ratio.
    CHECK(grid[i] / grid[i - 1] ==
          doctest::Approx(grid[1] / grid[0]).epsilon(1e-9));
  }
  CHECK(geometric_grid(0.01, 0.01, 1) == std::vector<double>{0.01});
  CHECK_THROWS_AS(geometric_grid(0.0, 0.1, 5), std::invalid_argument);
  CHECK_THROWS_AS(geometric_grid(0.2, 0.1, 5), std::invalid_argument);
}

TEST_CASE("zero channel estimates zero logical rate") {
  const SurfaceCode code = build_code({3, 3});
  const SweepPoint pt = estimate_logical_rate(
      code, make_channel(0.0, Bias::finite(1)), 500, RngSeed{3});
  CHECK(pt.trials == 500);
  CHECK(pt.any_failures == 0);
  CHECK(pt.p_logical == 0.0);
  CHECK(pt.std_error == 0.0);
}

TEST_CASE("certain noise is deterministic across runs") {
  const SurfaceCode code = build_code({3, 3});
  const ChannelParams ch = make_channel(1.0, Bias::inf());
  const SweepPoint a = estimate_logical_rate(code, ch, 200, RngSeed{4});
  const SweepPoint b = estimate_logical_rate(code, ch, 200, RngSeed{99});
  // Every qubit flips in every trial, so the failure count cannot depend on
  // the seed.
  CHECK(a.any_failures == b.any_failures);
  CHECK((a.p_logical == 0.0 || a.p_logical == 1.0));
}

TEST_CASE("estimate requires at least one trial") {
  const SurfaceCode code = build_code({3, 3});
  CHECK_THROWS_AS(
      estimate_logical_rate(code, make_channel(0.1, Bias::finite(1)), 0,
                            RngSeed{1}),
      std::invalid_argument);
}

TEST_CASE("sweep points are reproducible and worker-count independent") {
  const SurfaceCode code = build_code({3, 5});
  const auto grid = geometric_grid(5e-3, 5e-2, 4);
  const SweepResult one =
      sweep_curve(code, Bias::finite(3), grid, 4000, RngSeed{123}, 1);
  const SweepResult three =
      sweep_curve(code, Bias::finite(3), grid, 4000, RngSeed{123}, 3);
  REQUIRE(one.points.size() == three.points.size());
  for (std::size_t i = 0; i < one.points.size(); ++i) {
    CHECK(one.points[i] == three.points[i]);
  }
  const SweepResult other =
      sweep_curve(code, Bias::finite(3), grid, 4000, RngSeed{124}, 1);
  bool all_equal = true;
  for (std::size_t i = 0; i < one.points.size(); ++i) {
    all_equal = all_equal && one.points[i] == other.points[i];
  }
  CHECK_FALSE(all_equal);
}

TEST_CASE("single-point grid reduces to estimate_logical_rate") {
  const SurfaceCode code = build_code({3, 3});
  const SweepResult curve =
      sweep_curve(code, Bias::finite(1), {0.01}, 2000, RngSeed{7}, 1);
  REQUIRE(curve.points.size() == 1);
  const Decoder decoder(code);
  const SweepPoint direct = estimate_logical_rate(
      decoder, make_channel(kappa_to_p(0.01), Bias::finite(1)), 2000,
      RngSeed{7}, 0, 1);
  CHECK(curve.points[0].any_failures == direct.any_failures);
}

TEST_CASE("sweep rejects non-increasing grids") {
  const SurfaceCode code = build_code({3, 3});
  CHECK_THROWS_AS(
      sweep_curve(code, Bias::finite(1), {0.02, 0.01}, 100, RngSeed{1}, 1),
      std::invalid_argument);
}

TEST_CASE("pseudo-threshold of the synthetic power-law curve is exact") {
  const auto est = pseudo_threshold(synthetic_power_curve());
  CHECK(est.value == doctest::Approx(0.1).epsilon(1e-9));
  CHECK(est.bracket_lo <= 0.1);
  CHECK(est.bracket_hi >= 0.1);
  CHECK(est.std_error >= 0.0);
}

TEST_CASE("pseudo-threshold reports a missing bracket") {
  SweepResult curve = synthetic_power_curve();
  // Truncate to the region strictly below the crossing.
  curve.points.resize(2);
  CHECK_THROWS_AS(pseudo_threshold(curve), NoCrossingError);
}

TEST_CASE("pure-Z logical rate is worse at high noise than low noise") {
  // Statistical sanity at the ends of the default grid.
  const SurfaceCode code = build_code({3, 3});
  const Decoder decoder(code);
  const double lo = kappa_to_p(1e-4), hi = kappa_to_p(5.5e-2);
  const SweepPoint a = estimate_logical_rate(
      decoder, make_channel(lo, Bias::finite(1)), 20000, RngSeed{10}, 0, 1);
  const SweepPoint b = estimate_logical_rate(
      decoder, make_channel(hi, Bias::finite(1)), 20000, RngSeed{10}, 1, 1);
  const double sigma =
      std::sqrt(a.std_error * a.std_error + b.std_error * b.std_error);
  CHECK(b.p_logical - a.p_logical >= 5.0 * sigma);
}

TEST_CASE("curve orderings at p = 0.01 mirror the per-species asymmetry") {
  const SurfaceCode code33 = build_code({3, 3});
  const SurfaceCode code35 = build_code({3, 5});
  const Decoder dec33(code33), dec35(code35);
  constexpr std::uint64_t kTrials = 30000;

  SUBCASE("pure Z: the rectangle wins") {
    const ChannelParams ch = make_pure_channel(0.01, PureKind::ZOnly);
    const SweepPoint a =
        estimate_logical_rate(dec33, ch, kTrials, RngSeed{21}, 0, 1);
    const SweepPoint b =
        estimate_logical_rate(dec35, ch, kTrials, RngSeed{22}, 0, 1);
    const double sigma = std::sqrt(a.std_error * a.std_error +
                                   b.std_error * b.std_error + 1e-18);
    CHECK((a.p_logical - b.p_logical) / sigma >= 3.0);
  }
  SUBCASE("pure X: the rectangle loses") {
    const ChannelParams ch = make_pure_channel(0.01, PureKind::XOnly);
    const SweepPoint a =
        estimate_logical_rate(dec33, ch, kTrials, RngSeed{23}, 0, 1);
    const SweepPoint b =
        estimate_logical_rate(dec35, ch, kTrials, RngSeed{24}, 0, 1);
    const double sigma = std::sqrt(a.std_error * a.std_error +
                                   b.std_error * b.std_error + 1e-18);
    CHECK((b.p_logical - a.p_logical) / sigma >= 3.0);
  }
}

TEST_CASE("refined pseudo-threshold narrows the bracket and is consistent "
          "with a fresh measurement at the fixed point") {
  const SurfaceCode code = build_code({3, 3});
  const auto grid = geometric_grid(1e-3, 5.5e-2, 12);
  const ThresholdEstimate est = pseudo_threshold_refined(
      code, Bias::finite(1), grid, 20000, RngSeed{31}, 1);
  CHECK(est.value > est.bracket_lo);
  CHECK(est.value < est.bracket_hi);

  const ChannelParams ch = make_channel(est.value, Bias::finite(1));
  const SweepPoint remeasured =
      estimate_logical_rate(code, ch, 20000, RngSeed{900001}, 0, 1);
  CHECK(std::abs(remeasured.p_logical - est.value) <=
        3.0 * std::max(remeasured.std_error, 1e-9) + 3.0 * est.std_error);
}

TEST_CASE("threshold validation") {
  const SurfaceCode code5 = build_code({3, 5});
  const SurfaceCode code7 = build_code({3, 7});
  const auto grid = geometric_grid(5e-3, 2e-2, 3);
  const SweepResult a =
      sweep_curve(code5, Bias::finite(1), grid, 200, RngSeed{41}, 1);
  const SweepResult b =
      sweep_curve(code7, Bias::finite(1), grid, 200, RngSeed{42}, 1);

  SUBCASE("needs two curves") {
    CHECK_THROWS_AS(threshold({a}), std::invalid_argument);
  }
  SUBCASE("identical curves have no unique crossing") {
    CHECK_THROWS_AS(threshold({a, a}), std::invalid_argument);  // same d_z
    SweepResult renamed = a;
    renamed.distances.dz = 7;  // same data, different label
    CHECK_THROWS_AS(threshold({a, renamed}), NoCrossingError);
  }
  SUBCASE("mismatched grids are rejected") {
    SweepResult other = sweep_curve(code7, Bias::finite(1),
                                    geometric_grid(6e-3, 2e-2, 3), 200,
                                    RngSeed{43}, 1);
    CHECK_THROWS_AS(threshold({a, other}), std::invalid_argument);
  }
  SUBCASE("mismatched channels are rejected") {
    SweepResult other =
        sweep_curve(code7, Bias::finite(2), grid, 200, RngSeed{44}, 1);
    CHECK_THROWS_AS(threshold({a, other}), std::invalid_argument);
  }
  SUBCASE("curves with no usable points never cross") {
    SweepResult za = a, zb = b;
    for (auto* curve : {&za, &zb}) {
      for (auto& pt : curve->points) {
        pt.x_failures = pt.z_failures = pt.any_failures = 0;
        pt.p_logical = 0.0;
        pt.std_error = 0.0;
      }
    }
    CHECK_THROWS_AS(threshold({za, zb}), NoCrossingError);
  }
}

TEST_CASE("threshold finds the analytic pure-Z crossing on synthetic curves") {
  // Two noise-free curves that cross exactly at p = 0.3.
  const auto make_curve = [](int dz, double slope) {
    SweepResult curve;
    curve.distances = {3, dz};
    curve.delta = Bias::inf();
    curve.trials = 1000000;
    curve.counting = "z-only";
    for (const double p : {0.15, 0.22, 0.34, 0.45}) {
      SweepPoint pt;
      pt.p = p;
      pt.kappa = p_to_kappa(p);
      pt.trials = curve.trials;
      pt.p_logical = 0.2 * std::pow(p / 0.3, slope);
      pt.any_failures = pt.z_failures = static_cast<std::uint64_t>(
          std::llround(pt.p_logical * static_cast<double>(pt.trials)));
      pt.std_error = std::sqrt(pt.p_logical * (1.0 - pt.p_logical) /
                               static_cast<double>(pt.trials));
      curve.points.push_back(pt);
    }
    return curve;
  };
  const auto est = threshold({make_curve(5, 2.0), make_curve(7, 3.0)});
  CHECK(est.value == doctest::Approx(0.3).epsilon(1e-6));
  CHECK(est.bracket_lo <= est.value);
  CHECK(est.bracket_hi >= est.value);
}

TEST_CASE("crossover scan on a reduced grid produces the table shape") {
  const auto grid = geometric_grid(5e-3, 5.5e-2, 6);
  const CrossoverTable table =
      crossover_scan({{3, 3}, {3, 5}}, 2, grid, 4000, RngSeed{61}, 1);
  REQUIRE(table.cells.size() == 4);
  CHECK(table.cells[0].delta == 1);
  CHECK(table.cells[0].distances.dx == 3);
  CHECK(table.cells[0].distances.dz == 3);
  CHECK(table.cells[1].distances.dz == 5);
  CHECK(table.cells[2].delta == 2);
  for (const auto& cell : table.cells) {
    CHECK(cell.gamma.value > 0.0);
    CHECK(cell.gamma.value < 1.0);
  }
  // The reduced code set lacks [5,5]/[3,7]/[7,7], so no crossover is found.
  CHECK(table.crossover_delta == -1);
}
