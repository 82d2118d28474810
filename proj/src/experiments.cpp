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

#include "rectsurf/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <thread>

namespace rectsurf {

namespace {

// Stream ids >= this are reserved for adaptive refinement points so they
// never collide with grid-point streams.
constexpr std::uint64_t kRefineStreamBase = std::uint64_t{1} << 32;

int resolve_workers(int workers) {
  if (workers > 0) return workers;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

std::string counting_rule(const ChannelParams& ch) {
  if (ch.pure_x()) return "x-only";
  if (ch.pure_z()) return "z-only";
  return "any";
}

std::pair<double, double> wilson_interval(std::uint64_t failures,
                                          std::uint64_t trials, double z) {
  if (trials == 0) return {0.0, 1.0};
  const double n = static_cast<double>(trials);
  const double phat = static_cast<double>(failures) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (phat + z2 / (2.0 * n)) / denom;
  const double half =
      z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n)) / denom;
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

std::vector<double> geometric_grid(double kappa_min, double kappa_max,
                                   int points) {
  if (points < 1) throw std::invalid_argument("grid needs at least one point");
  if (!(kappa_min > 0.0) || !(kappa_max >= kappa_min) || !(kappa_max <= 1.0)) {
    throw std::invalid_argument("kappa grid bounds must satisfy 0 < min <= max <= 1");
  }
  std::vector<double> grid(points);
  if (points == 1) {
    grid[0] = kappa_min;
    return grid;
  }
  const double ratio = std::log(kappa_max / kappa_min) / (points - 1);
  for (int i = 0; i < points; ++i) {
    grid[i] = kappa_min * std::exp(ratio * i);
  }
  grid.back() = kappa_max;
  return grid;
}

SweepPoint estimate_logical_rate(const Decoder& decoder,
                                 const ChannelParams& ch, std::uint64_t trials,
                                 RngSeed seed, std::uint64_t stream,
                                 int workers) {
  if (trials < 1) throw std::invalid_argument("at least one trial required");
  const int n_workers =
      static_cast<int>(std::min<std::uint64_t>(resolve_workers(workers), trials));

  struct Partial {
    std::uint64_t x = 0, z = 0, any = 0;
  };
  std::vector<Partial> partials(n_workers);

  const auto run_range = [&](std::uint64_t lo, std::uint64_t hi, Partial& out) {
    for (std::uint64_t t = lo; t < hi; ++t) {
      const TrialOutcome outcome = run_single_decode(decoder, ch, seed, stream, t);
      out.x += outcome.x_fail;
      out.z += outcome.z_fail;
      out.any += outcome.any_fail();
    }
  };

  if (n_workers == 1) {
    run_range(0, trials, partials[0]);
  } else {
    const std::uint64_t chunk = (trials + n_workers - 1) / n_workers;
    std::vector<std::thread> threads;
    threads.reserve(n_workers);
    for (int w = 0; w < n_workers; ++w) {
      const std::uint64_t lo = chunk * w;
      const std::uint64_t hi = std::min(trials, lo + chunk);
      threads.emplace_back(run_range, lo, hi, std::ref(partials[w]));
    }
    for (auto& th : threads) th.join();
  }

  SweepPoint point;
  point.p = ch.p;
  point.kappa = p_to_kappa(ch.p);
  point.trials = trials;
  for (const auto& part : partials) {
    point.x_failures += part.x;
    point.z_failures += part.z;
    point.any_failures += part.any;
  }
  std::uint64_t counted = point.any_failures;
  if (ch.pure_x()) counted = point.x_failures;
  if (ch.pure_z()) counted = point.z_failures;
  point.p_logical = static_cast<double>(counted) / static_cast<double>(trials);
  point.std_error = std::sqrt(point.p_logical * (1.0 - point.p_logical) /
                              static_cast<double>(trials));
  return point;
}

SweepPoint estimate_logical_rate(const SurfaceCode& code,
                                 const ChannelParams& ch, std::uint64_t trials,
                                 RngSeed seed, std::uint64_t stream,
                                 int workers) {
  Decoder decoder(code);
  return estimate_logical_rate(decoder, ch, trials, seed, stream, workers);
}

SweepResult sweep_curve(const SurfaceCode& code, Bias delta,
                        const std::vector<double>& kappa_grid,
                        std::uint64_t trials, RngSeed seed, int workers) {
  for (std::size_t i = 1; i < kappa_grid.size(); ++i) {
    if (!(kappa_grid[i] > kappa_grid[i - 1])) {
      throw std::invalid_argument("kappa grid must be strictly increasing");
    }
  }
  SweepResult result;
  result.distances = code.distances;
  result.delta = delta;
  result.seed = seed.master;
  result.trials = trials;
  result.counting = counting_rule(make_channel(0.5, delta));

  Decoder decoder(code);
  result.points.reserve(kappa_grid.size());
  for (std::size_t i = 0; i < kappa_grid.size(); ++i) {
    const ChannelParams ch = make_channel(kappa_to_p(kappa_grid[i]), delta);
    SweepPoint point = estimate_logical_rate(decoder, ch, trials, seed,
                                             /*stream=*/i, workers);
    point.kappa = kappa_grid[i];
    result.points.push_back(point);
  }
  return result;
}

std::string curve_label(const SweepResult& curve) {
  return "[" + std::to_string(curve.distances.dx) + "," +
         std::to_string(curve.distances.dz) + "] delta=" +
         curve.delta.to_string();
}

namespace {

// Standard error of p_logical that stays usable at zero counts: half-width
// of the one-sigma Wilson interval.
double robust_sigma(const SweepPoint& pt) {
  const auto counted = static_cast<std::uint64_t>(
      std::llround(pt.p_logical * static_cast<double>(pt.trials)));
  const auto [lo, hi] = wilson_interval(counted, pt.trials, 1.0);
  return 0.5 * (hi - lo);
}

struct Crossing {
  double value = 0.0;
  double sigma = 0.0;
  double lo = 0.0;
  double hi = 0.0;
};

// Root of the linear interpolation of (x1,f1)-(x2,f2) with f1, f2 of
// opposite sign, plus the propagated uncertainty of the root location.
Crossing interpolate_root(double x1, double f1, double s1, double x2,
                          double f2, double s2, bool x_is_log) {
  Crossing c;
  const double df = f1 - f2;
  const double t = f1 / df;
  const double x = x1 + t * (x2 - x1);
  const double var_t =
      (f2 * f2 * s1 * s1 + f1 * f1 * s2 * s2) / (df * df * df * df);
  const double sx = std::abs(x2 - x1) * std::sqrt(var_t);
  if (x_is_log) {
    c.value = std::exp(x);
    c.sigma = c.value * sx;
    c.lo = std::exp(x1);
    c.hi = std::exp(x2);
  } else {
    c.value = x;
    c.sigma = sx;
    c.lo = x1;
    c.hi = x2;
  }
  return c;
}

// Crossing of two curves on a shared grid. g = log(PL_a) - log(PL_b) flips
// sign at the crossing; the location is the root of a weighted linear fit of
// g against log p over a small window around the most significant sign
// change. The windowed fit matters for near-tangential crossings (pure-Z
// curve families meet at p = 1/2 with vanishing separation), where two-point
// interpolation is dominated by counting noise.
std::optional<Crossing> pairwise_crossing(const std::vector<SweepPoint>& a,
                                          const std::vector<SweepPoint>& b) {
  struct Sample {
    double x;   // log p
    double g;   // log-rate difference
    double sigma;
  };
  std::vector<Sample> samples;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].p_logical <= 0.0 || b[i].p_logical <= 0.0) continue;
    Sample s;
    s.x = std::log(a[i].p);
    s.g = std::log(a[i].p_logical) - std::log(b[i].p_logical);
    s.sigma = std::max(std::hypot(robust_sigma(a[i]) / a[i].p_logical,
                                  robust_sigma(b[i]) / b[i].p_logical),
                       1e-12);
    samples.push_back(s);
  }
  if (samples.size() < 2) return std::nullopt;

  const auto flips = [&](std::size_t i) {
    const double g1 = samples[i].g, g2 = samples[i + 1].g;
    return (g1 > 0.0 && g2 <= 0.0) || (g1 < 0.0 && g2 >= 0.0);
  };
  int bracket = -1;
  double best_score = -1.0;
  for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
    if (!flips(i)) continue;
    const double score = std::min(std::abs(samples[i].g) / samples[i].sigma,
                                  std::abs(samples[i + 1].g) / samples[i + 1].sigma);
    if (score > best_score) {
      best_score = score;
      bracket = static_cast<int>(i);
    }
  }
  if (bracket < 0) return std::nullopt;

  // Fit window: the longest contiguous run of points whose separation is
  // statistically small (|g| <= 6 sigma) and which spans a sign change.
  // Transversal crossings keep only their immediate neighborhood; a
  // tangential approach keeps the whole noise-limited plateau.
  int lo = bracket, hi = bracket + 1;
  {
    std::vector<char> small(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
      small[i] = std::abs(samples[i].g) <= 6.0 * samples[i].sigma;
    }
    int run_start = -1;
    int best_lo = -1, best_hi = -1;
    for (std::size_t i = 0; i <= samples.size(); ++i) {
      if (i < samples.size() && small[i]) {
        if (run_start < 0) run_start = static_cast<int>(i);
        continue;
      }
      if (run_start >= 0) {
        const int run_end = static_cast<int>(i) - 1;
        bool has_flip = false;
        for (int k = run_start; k < run_end; ++k) has_flip = has_flip || flips(k);
        if (has_flip && run_end - run_start > best_hi - best_lo) {
          best_lo = run_start;
          best_hi = run_end;
        }
        run_start = -1;
      }
    }
    if (best_lo >= 0) {
      lo = best_lo;
      hi = best_hi;
    }
  }

  const auto two_point = [&]() {
    return interpolate_root(samples[bracket].x, samples[bracket].g,
                            samples[bracket].sigma, samples[bracket + 1].x,
                            samples[bracket + 1].g, samples[bracket + 1].sigma,
                            /*x_is_log=*/true);
  };

  // Weighted least squares g = alpha + beta x over the window.
  double S = 0, Sx = 0, Sxx = 0, Sy = 0, Sxy = 0;
  for (int i = lo; i <= hi; ++i) {
    const double w = 1.0 / (samples[i].sigma * samples[i].sigma);
    S += w;
    Sx += w * samples[i].x;
    Sxx += w * samples[i].x * samples[i].x;
    Sy += w * samples[i].g;
    Sxy += w * samples[i].x * samples[i].g;
  }
  const double det = S * Sxx - Sx * Sx;
  if (det <= 0.0) return two_point();
  const double beta = (S * Sxy - Sx * Sy) / det;
  const double alpha = (Sxx * Sy - Sx * Sxy) / det;
  if (beta == 0.0) return two_point();
  const double root = -alpha / beta;
  if (root < samples[lo].x || root > samples[hi].x) return two_point();

  const double var_alpha = Sxx / det;
  const double var_beta = S / det;
  const double cov = -Sx / det;
  const double var_root =
      (var_alpha + root * root * var_beta + 2.0 * root * cov) / (beta * beta);

  Crossing out;
  out.value = std::exp(root);
  out.sigma = out.value * std::sqrt(std::max(var_root, 0.0));
  out.lo = std::exp(samples[lo].x);
  out.hi = std::exp(samples[hi].x);
  return out;
}

// Crossing of the curve with the identity line. f(p) = log(PL) - log(p),
// scanned from the high-p end.
std::optional<Crossing> identity_crossing(const std::vector<SweepPoint>& pts) {
  for (int i = static_cast<int>(pts.size()) - 2; i >= 0; --i) {
    const auto& a = pts[i];
    const auto& b = pts[i + 1];
    const bool below_a = a.p_logical < a.p;
    const bool above_b = b.p_logical >= b.p;
    if (!(below_a && above_b)) continue;
    if (a.p_logical <= 0.0) {
      // No failures at the lower point: fall back to linear interpolation
      // in p, which needs no logarithms.
      const double f1 = a.p_logical - a.p;
      const double f2 = b.p_logical - b.p;
      return interpolate_root(a.p, f1, robust_sigma(a), b.p, f2,
                              robust_sigma(b), /*x_is_log=*/false);
    }
    const double f1 = std::log(a.p_logical) - std::log(a.p);
    const double f2 = std::log(b.p_logical) - std::log(b.p);
    const double s1 = robust_sigma(a) / a.p_logical;
    const double s2 = robust_sigma(b) / b.p_logical;
    return interpolate_root(std::log(a.p), f1, s1, std::log(b.p), f2, s2,
                            /*x_is_log=*/true);
  }
  return std::nullopt;
}

}  // namespace

ThresholdEstimate pseudo_threshold(const SweepResult& curve) {
  if (curve.points.size() < 2) {
    throw std::invalid_argument("pseudo-threshold needs at least two points");
  }
  const auto crossing = identity_crossing(curve.points);
  if (!crossing) {
    throw NoCrossingError("curve " + curve_label(curve) +
                          " never crosses the identity line P_L = p inside "
                          "the sampled grid");
  }
  ThresholdEstimate est;
  est.value = crossing->value;
  est.bracket_lo = crossing->lo;
  est.bracket_hi = crossing->hi;
  est.std_error = crossing->sigma;
  est.method = "log-log interpolation against the identity line";
  est.curves = {curve_label(curve)};
  return est;
}

ThresholdEstimate pseudo_threshold_refined(const SurfaceCode& code, Bias delta,
                                           const std::vector<double>& kappa_grid,
                                           std::uint64_t trials, RngSeed seed,
                                           int workers, RefineOptions opts) {
  SweepResult curve = sweep_curve(code, delta, kappa_grid, trials, seed, workers);
  Decoder decoder(code);
  ThresholdEstimate est = pseudo_threshold(curve);
  for (int iter = 0; iter < opts.max_refinements; ++iter) {
    if (est.bracket_hi - est.bracket_lo <= opts.bracket_tolerance) break;
    const double kappa_new = p_to_kappa(est.value);
    const bool duplicate =
        std::any_of(curve.points.begin(), curve.points.end(),
                    [&](const SweepPoint& pt) { return pt.kappa == kappa_new; });
    if (duplicate) break;
    const ChannelParams ch = make_channel(kappa_to_p(kappa_new), delta);
    SweepPoint point =
        estimate_logical_rate(decoder, ch, trials, seed,
                              kRefineStreamBase + static_cast<std::uint64_t>(iter),
                              workers);
    point.kappa = kappa_new;
    const auto pos = std::upper_bound(
        curve.points.begin(), curve.points.end(), point.kappa,
        [](double k, const SweepPoint& pt) { return k < pt.kappa; });
    curve.points.insert(pos, point);
    est = pseudo_threshold(curve);
  }
  est.method += ", adaptively refined";
  return est;
}

ThresholdEstimate threshold(const std::vector<SweepResult>& curves) {
  if (curves.size() < 2) {
    throw std::invalid_argument("threshold needs at least two curves");
  }
  std::vector<const SweepResult*> ordered;
  for (const auto& c : curves) ordered.push_back(&c);
  std::sort(ordered.begin(), ordered.end(),
            [](const SweepResult* a, const SweepResult* b) {
              return a->distances.dz < b->distances.dz;
            });
  for (std::size_t i = 0; i < ordered.size(); ++i) {
    if (ordered[i]->distances.dx != ordered[0]->distances.dx) {
      throw std::invalid_argument("threshold curves must share d_x");
    }
    if (!(ordered[i]->delta == ordered[0]->delta)) {
      throw std::invalid_argument("threshold curves must share the channel");
    }
    if (i > 0 && ordered[i]->distances.dz == ordered[i - 1]->distances.dz) {
      throw std::invalid_argument("threshold curves must have distinct d_z");
    }
    if (ordered[i]->points.size() != ordered[0]->points.size()) {
      throw std::invalid_argument("threshold curves must share the kappa grid");
    }
    for (std::size_t j = 0; j < ordered[i]->points.size(); ++j) {
      if (ordered[i]->points[j].kappa != ordered[0]->points[j].kappa) {
        throw std::invalid_argument("threshold curves must share the kappa grid");
      }
    }
  }

  ThresholdEstimate est;
  est.method =
      "pairwise curve crossings (windowed weighted log-log fit), "
      "inverse-variance weighted mean";
  std::vector<Crossing> crossings;
  for (std::size_t c = 0; c + 1 < ordered.size(); ++c) {
    const auto& small = ordered[c]->points;
    const auto& large = ordered[c + 1]->points;
    est.curves.push_back(curve_label(*ordered[c]));
    if (c + 2 == ordered.size()) est.curves.push_back(curve_label(*ordered[c + 1]));

    const auto found = pairwise_crossing(small, large);
    if (!found) {
      throw NoCrossingError("curves " + curve_label(*ordered[c]) + " and " +
                            curve_label(*ordered[c + 1]) +
                            " have no unique crossing inside the grid");
    }
    crossings.push_back(*found);
    est.pair_crossings.push_back(
        {curve_label(*ordered[c]) + " x " + curve_label(*ordered[c + 1]),
         found->value, found->sigma});
  }

  double wsum = 0.0, wvsum = 0.0;
  for (const auto& c : crossings) {
    const double sigma = std::max(c.sigma, 1e-12);
    const double w = 1.0 / (sigma * sigma);
    wsum += w;
    wvsum += w * c.value;
  }
  est.value = wvsum / wsum;
  double spread2 = 0.0;
  for (const auto& c : crossings) {
    const double sigma = std::max(c.sigma, 1e-12);
    const double w = 1.0 / (sigma * sigma);
    spread2 += w * (c.value - est.value) * (c.value - est.value);
  }
  spread2 /= wsum;
  est.std_error = std::max(std::sqrt(spread2), std::sqrt(1.0 / wsum));
  est.bracket_lo = crossings.front().lo;
  est.bracket_hi = crossings.front().hi;
  for (const auto& c : crossings) {
    est.bracket_lo = std::min(est.bracket_lo, c.lo);
    est.bracket_hi = std::max(est.bracket_hi, c.hi);
  }
  return est;
}

std::vector<Distances> default_crossover_codes() {
  return {{3, 3}, {3, 5}, {3, 7}, {5, 5}, {5, 7}, {7, 7}};
}

CrossoverTable crossover_scan(const std::vector<Distances>& codes,
                              int delta_max,
                              const std::vector<double>& kappa_grid,
                              std::uint64_t trials, RngSeed seed, int workers,
                              RefineOptions opts) {
  if (delta_max < 1) throw std::invalid_argument("delta_max must be >= 1");
  CrossoverTable table;
  std::uint64_t cell_tag = 0;
  for (int delta = 1; delta <= delta_max; ++delta) {
    for (const auto& d : codes) {
      const SurfaceCode code = build_code(d);
      CrossoverCell cell;
      cell.distances = d;
      cell.delta = delta;
      cell.gamma = pseudo_threshold_refined(
          code, Bias::finite(delta), kappa_grid, trials,
          derive_seed(seed, cell_tag), workers, opts);
      table.cells.push_back(std::move(cell));
      ++cell_tag;
    }
  }

  const auto find_gamma = [&](int dx, int dz, int delta) -> const ThresholdEstimate* {
    for (const auto& cell : table.cells) {
      if (cell.distances.dx == dx && cell.distances.dz == dz &&
          cell.delta == delta) {
        return &cell.gamma;
      }
    }
    return nullptr;
  };
  for (int delta = 1; delta <= delta_max; ++delta) {
    const auto* g35 = find_gamma(3, 5, delta);
    const auto* g55 = find_gamma(5, 5, delta);
    const auto* g37 = find_gamma(3, 7, delta);
    const auto* g77 = find_gamma(7, 7, delta);
    if (!g35 || !g55 || !g37 || !g77) break;
    if (g35->value > g55->value && g37->value > g77->value) {
      table.crossover_delta = delta;
      break;
    }
  }
  return table;
}

}  // namespace rectsurf
