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

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "rectsurf/code_lattice.hpp"
#include "rectsurf/decoder.hpp"
#include "rectsurf/noise.hpp"

namespace rectsurf {

struct SweepPoint {
  double kappa = 0.0;
  double p = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t x_failures = 0;
  std::uint64_t z_failures = 0;
  std::uint64_t any_failures = 0;
  double p_logical = 0.0;
  double std_error = 0.0;  // binomial standard error of p_logical

  bool operator==(const SweepPoint&) const = default;
};

/// Logical-error-rate curve over a kappa grid, with everything needed to
/// reproduce it bit for bit.
struct SweepResult {
  Distances distances;
  Bias delta;
  std::vector<SweepPoint> points;
  std::uint64_t seed = 1;
  std::uint64_t trials = 0;
  std::string generator = RngSeed::kGeneratorName;
  std::string counting;  // "any", "x-only" or "z-only"
};

struct PairCrossing {
  std::string label;
  double value = 0.0;
  double sigma = 0.0;
};

struct ThresholdEstimate {
  double value = 0.0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  double std_error = 0.0;
  std::string method;
  std::vector<std::string> curves;
  std::vector<PairCrossing> pair_crossings;  // threshold estimates only
};

struct NoCrossingError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Failure-counting rule implied by the channel: single-species channels
/// count only their own species, mixed channels count any logical failure.
std::string counting_rule(const ChannelParams& ch);

/// Wilson score interval for k failures in n trials at z standard
/// deviations. Robust at zero counts, ~binomial at large ones.
std::pair<double, double> wilson_interval(std::uint64_t failures,
                                          std::uint64_t trials, double z);

/// Geometric grid of `points` kappas from kappa_min to kappa_max inclusive.
std::vector<double> geometric_grid(double kappa_min, double kappa_max,
                                   int points);

/// Monte Carlo estimate at one channel setting. Trials are split across
/// `workers` threads (0 = hardware concurrency); the result is identical
/// for any worker count.
SweepPoint estimate_logical_rate(const Decoder& decoder,
                                 const ChannelParams& ch, std::uint64_t trials,
                                 RngSeed seed, std::uint64_t stream,
                                 int workers);

SweepPoint estimate_logical_rate(const SurfaceCode& code,
                                 const ChannelParams& ch, std::uint64_t trials,
                                 RngSeed seed, std::uint64_t stream = 0,
                                 int workers = 1);

/// One SweepPoint per kappa, with per-point derived substreams.
SweepResult sweep_curve(const SurfaceCode& code, Bias delta,
                        const std::vector<double>& kappa_grid,
                        std::uint64_t trials, RngSeed seed, int workers);

/// Crossing of the curve with the identity line P_L = p, located by
/// log-log interpolation between the bracketing grid points. Throws
/// NoCrossingError when the curve never crosses.
ThresholdEstimate pseudo_threshold(const SweepResult& curve);

struct RefineOptions {
  double bracket_tolerance = 0.002;
  int max_refinements = 6;
};

/// Sweeps the given grid and adaptively re-samples at the interpolated
/// crossing until the bracket is narrower than the tolerance.
ThresholdEstimate pseudo_threshold_refined(const SurfaceCode& code, Bias delta,
                                           const std::vector<double>& kappa_grid,
                                           std::uint64_t trials, RngSeed seed,
                                           int workers,
                                           RefineOptions opts = {});

/// Threshold gamma* from curves of fixed d_x and increasing d_z on a shared
/// grid: inverse-variance-weighted mean of the pairwise adjacent-curve
/// crossings. Throws NoCrossingError if any adjacent pair never crosses
/// (identical curves included).
ThresholdEstimate threshold(const std::vector<SweepResult>& curves);

struct CrossoverCell {
  Distances distances;
  double delta = 1.0;
  ThresholdEstimate gamma;
};

struct CrossoverTable {
  std::vector<CrossoverCell> cells;
  /// Smallest delta with gamma(3,5) > gamma(5,5) and gamma(3,7) > gamma(7,7),
  /// or -1 when the scanned range never reaches it.
  int crossover_delta = -1;
};

/// Pseudo-threshold grid over codes x integer bias values 1..delta_max.
CrossoverTable crossover_scan(const std::vector<Distances>& codes,
                              int delta_max,
                              const std::vector<double>& kappa_grid,
                              std::uint64_t trials, RngSeed seed, int workers,
                              RefineOptions opts = {});

/// Canonical set of codes scanned by the crossover table.
std::vector<Distances> default_crossover_codes();

std::string curve_label(const SweepResult& curve);

}  // namespace rectsurf
