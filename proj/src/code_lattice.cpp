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

#include "rectsurf/code_lattice.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace rectsurf {

void validate_distances(const Distances& d) {
  for (int v : {d.dx, d.dz}) {
    if (v < 3) {
      throw std::invalid_argument("distance " + std::to_string(v) +
                                  " is below the minimum of 3");
    }
    if (v % 2 == 0) {
      throw std::invalid_argument("distance " + std::to_string(v) +
                                  " is even; only odd distances are supported");
    }
  }
}

namespace {

Stabilizer make_stab(StabKind kind, std::vector<int> support, int r, int c,
                     AnchorSide side) {
  std::sort(support.begin(), support.end());
  return Stabilizer{kind, std::move(support), r, c, side};
}

}  // namespace

SurfaceCode build_code(const Distances& d) {
  validate_distances(d);

  SurfaceCode code;
  code.distances = d;
  code.n_data = d.dx * d.dz;
  const auto q = [&](int r, int c) { return r * d.dz + c; };

  // Interior plaquettes, checkerboarded so the (0,0) plaquette is Z.
  for (int r = 0; r <= d.dx - 2; ++r) {
    for (int c = 0; c <= d.dz - 2; ++c) {
      std::vector<int> support = {q(r, c), q(r, c + 1), q(r + 1, c),
                                  q(r + 1, c + 1)};
      const StabKind kind = ((r + c) % 2 == 0) ? StabKind::Z : StabKind::X;
      auto& list =
          (kind == StabKind::Z) ? code.z_stabilizers : code.x_stabilizers;
      list.push_back(make_stab(kind, support, r, c, AnchorSide::Interior));
    }
  }

  // Weight-2 X checks on the top and bottom rows.
  for (int c = 0; c <= d.dz - 2; ++c) {
    if (c % 2 == 0) {
      code.x_stabilizers.push_back(make_stab(
          StabKind::X, {q(0, c), q(0, c + 1)}, -1, c, AnchorSide::Top));
    }
    if ((d.dx - 2 + c) % 2 == 0) {
      code.x_stabilizers.push_back(
          make_stab(StabKind::X, {q(d.dx - 1, c), q(d.dx - 1, c + 1)},
                    d.dx - 1, c, AnchorSide::Bottom));
    }
  }

  // Weight-2 Z checks on the left and right columns.
  for (int r = 0; r <= d.dx - 2; ++r) {
    if (r % 2 == 1) {
      code.z_stabilizers.push_back(make_stab(
          StabKind::Z, {q(r, 0), q(r + 1, 0)}, r, -1, AnchorSide::Left));
    }
    if ((r + d.dz - 2) % 2 == 1) {
      code.z_stabilizers.push_back(
          make_stab(StabKind::Z, {q(r, d.dz - 1), q(r + 1, d.dz - 1)}, r,
                    d.dz - 1, AnchorSide::Right));
    }
  }

  // Canonical ordering: X checks sweep rows top to bottom, Z checks sweep
  // columns left to right. This reproduces the distance-3 check indices.
  std::sort(code.x_stabilizers.begin(), code.x_stabilizers.end(),
            [](const Stabilizer& a, const Stabilizer& b) {
              return std::pair(a.anchor_r, a.anchor_c) <
                     std::pair(b.anchor_r, b.anchor_c);
            });
  std::sort(code.z_stabilizers.begin(), code.z_stabilizers.end(),
            [](const Stabilizer& a, const Stabilizer& b) {
              return std::pair(a.anchor_c, a.anchor_r) <
                     std::pair(b.anchor_c, b.anchor_r);
            });

  for (int c = 0; c < d.dz; ++c) {
    std::vector<int> column(d.dx);
    for (int r = 0; r < d.dx; ++r) column[r] = q(r, c);
    code.logical_x_reps.push_back(std::move(column));
  }
  for (int r = 0; r < d.dx; ++r) {
    std::vector<int> row(d.dz);
    for (int c = 0; c < d.dz; ++c) row[c] = q(r, c);
    code.logical_z_reps.push_back(std::move(row));
  }

  return code;
}

std::pair<int, int> correctable_weights(const SurfaceCode& code) {
  return {(code.distances.dx - 1) / 2, (code.distances.dz - 1) / 2};
}

double qubit_savings_percent(const Distances& d) {
  if (d.dz < d.dx) {
    throw std::invalid_argument(
        "qubit savings is defined for d_z >= d_x; swap the distances for "
        "bit-flip-biased channels");
  }
  return 100.0 * static_cast<double>(d.dz - d.dx) / static_cast<double>(d.dz);
}

}  // namespace rectsurf
