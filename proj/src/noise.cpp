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

#include "rectsurf/noise.hpp"

#include <cmath>
#include <stdexcept>

namespace rectsurf {

std::string Bias::to_string() const {
  switch (kind) {
    case Kind::Inf:
      return "inf";
    case Kind::PureX:
      return "purex";
    case Kind::Finite:
    default: {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%.17g", value);
      return buf;
    }
  }
}

Bias Bias::from_string(const std::string& text) {
  if (text == "inf" || text == "Inf" || text == "INF") return Bias::inf();
  if (text == "purex" || text == "pure-x" || text == "x") return Bias::pure_x();
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("cannot parse bias \"" + text + "\"");
  }
  if (used != text.size()) {
    throw std::invalid_argument("cannot parse bias \"" + text + "\"");
  }
  return Bias::finite(v);
}

double kappa_to_p(double kappa) {
  if (!(kappa >= 0.0 && kappa <= 1.0)) {
    throw std::invalid_argument("kappa must lie in [0, 1]");
  }
  return -std::expm1(8.0 * std::log1p(-kappa));
}

double p_to_kappa(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("p must lie in [0, 1]");
  }
  return -std::expm1(std::log1p(-p) / 8.0);
}

ChannelParams make_channel(double p, Bias delta) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("p must lie in [0, 1]");
  }
  ChannelParams ch;
  ch.p = p;
  ch.delta = delta;
  switch (delta.kind) {
    case Bias::Kind::Inf:
      ch.p_x = ch.p_y = 0.0;
      ch.p_z = p;
      break;
    case Bias::Kind::PureX:
      ch.p_x = p;
      ch.p_y = ch.p_z = 0.0;
      break;
    case Bias::Kind::Finite:
    default: {
      if (!(delta.value >= 1.0)) {
        throw std::invalid_argument(
            "bias delta must be >= 1 (swap d_x and d_z for bit-flip-biased "
            "channels)");
      }
      ch.p_x = p / (delta.value + 2.0);
      ch.p_y = ch.p_x;
      ch.p_z = p * delta.value / (delta.value + 2.0);
      break;
    }
  }
  return ch;
}

ChannelParams make_pure_channel(double p, PureKind kind) {
  return make_channel(p, kind == PureKind::XOnly ? Bias::pure_x()
                                                 : Bias::inf());
}

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ULL;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return z;
}

}  // namespace

RngSeed derive_seed(RngSeed seed, std::uint64_t tag) {
  return RngSeed{mix64(seed.master ^ mix64(tag + kGolden))};
}

TrialRng::TrialRng(RngSeed seed, std::uint64_t stream, std::uint64_t trial)
    : state_(mix64(mix64(seed.master + kGolden * (stream + 1)) +
                   kGolden * (trial + 1))) {}

std::uint64_t TrialRng::next_u64() {
  state_ += kGolden;
  return mix64(state_);
}

double TrialRng::next_double() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

PauliError sample_error(const SurfaceCode& code, const ChannelParams& ch,
                        TrialRng& rng) {
  PauliError e(static_cast<std::size_t>(code.n_data));
  const double tx = ch.p_x;
  const double ty = ch.p_x + ch.p_y;
  const double tz = ch.p_x + ch.p_y + ch.p_z;
  for (int q = 0; q < code.n_data; ++q) {
    const double u = rng.next_double();
    if (u >= tz) continue;
    if (u < tx) {
      e.apply_x(static_cast<std::size_t>(q));
    } else if (u < ty) {
      e.apply_y(static_cast<std::size_t>(q));
    } else {
      e.apply_z(static_cast<std::size_t>(q));
    }
  }
  return e;
}

PauliError sample_error(const SurfaceCode& code, const ChannelParams& ch,
                        RngSeed seed, std::uint64_t stream,
                        std::uint64_t trial) {
  TrialRng rng(seed, stream, trial);
  return sample_error(code, ch, rng);
}

}  // namespace rectsurf
