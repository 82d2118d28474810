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
#include <string>

#include "rectsurf/code_lattice.hpp"
#include "rectsurf/pauli.hpp"

namespace rectsurf {

/// Channel bias. Finite holds delta = p_z / p_x >= 1; Inf is the pure
/// phase-flip limit (kept exact rather than as a large float); PureX is the
/// bit-flip-only channel used for per-species curves.
struct Bias {
  enum class Kind : std::uint8_t { Finite, Inf, PureX };

  Kind kind = Kind::Finite;
  double value = 1.0;  // meaningful only for Finite

  static Bias finite(double delta) { return {Kind::Finite, delta}; }
  static Bias inf() { return {Kind::Inf, 0.0}; }
  static Bias pure_x() { return {Kind::PureX, 0.0}; }

  bool operator==(const Bias& other) const {
    return kind == other.kind &&
           (kind != Kind::Finite || value == other.value);
  }

  /// "1", "10", "inf", "purex" -- the form used in CLI flags and files.
  std::string to_string() const;
  static Bias from_string(const std::string& text);
};

/// Per-qubit error probabilities of the (possibly biased) Pauli channel.
struct ChannelParams {
  double p = 0.0;  // total per-qubit error probability
  Bias delta;
  double p_x = 0.0;
  double p_y = 0.0;
  double p_z = 0.0;

  bool pure_x() const { return p_y == 0.0 && p_z == 0.0 && p_x > 0.0; }
  bool pure_z() const { return p_x == 0.0 && p_y == 0.0 && p_z > 0.0; }
};

/// p = 1 - (1 - kappa)^8 for a full eight-step cycle. kappa must be in [0,1].
double kappa_to_p(double kappa);

/// Inverse of kappa_to_p, used when re-sampling a curve at a target p.
double p_to_kappa(double p);

/// Splits p into (p_x, p_y, p_z) = (p, p, p*delta) / (delta + 2).
/// delta = 1 is the symmetric depolarizing split; Bias::inf() gives
/// (0, 0, p). Finite delta < 1 is rejected: bit-flip-biased channels are
/// handled by swapping d_x and d_z instead.
ChannelParams make_channel(double p, Bias delta);

enum class PureKind : std::uint8_t { XOnly, ZOnly };

/// Single-species channel: (p,0,0) or (0,0,p).
ChannelParams make_pure_channel(double p, PureKind kind);

/// Master seed for a family of counter-derived trial streams. Streams are
/// keyed by (stream, trial), so trials can run on any worker in any order
/// and still draw identical values.
struct RngSeed {
  std::uint64_t master = 1;

  static constexpr const char* kGeneratorName = "splitmix64";
};

/// Deterministically derives an independent seed for a sub-experiment.
RngSeed derive_seed(RngSeed seed, std::uint64_t tag);

/// splitmix64 positioned by hashing (master, stream, trial). Cheap to
/// construct per trial; not suitable for cryptography.
class TrialRng {
 public:
  TrialRng(RngSeed seed, std::uint64_t stream, std::uint64_t trial);

  std::uint64_t next_u64();

  /// Uniform in [0, 1) with 53 random bits.
  double next_double();

 private:
  std::uint64_t state_;
};

/// One i.i.d. single-shot sample of data-qubit noise, deterministic per
/// (seed, stream, trial).
PauliError sample_error(const SurfaceCode& code, const ChannelParams& ch,
                        RngSeed seed, std::uint64_t stream,
                        std::uint64_t trial);

/// Same sample, drawn from a caller-positioned generator.
PauliError sample_error(const SurfaceCode& code, const ChannelParams& ch,
                        TrialRng& rng);

}  // namespace rectsurf
