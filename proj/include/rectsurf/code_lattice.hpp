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
#include <utility>
#include <vector>

namespace rectsurf {

/// Distance pair of a rectangular rotated surface code: d_x rows control the
/// bit-flip distance, d_z columns the phase-flip distance. Both must be odd
/// and >= 3.
struct Distances {
  int dx = 3;
  int dz = 3;
};

/// Throws std::invalid_argument when a distance is even or below 3.
void validate_distances(const Distances& d);

enum class StabKind : std::uint8_t { X, Z };

/// Which lattice feature a stabilizer is anchored to.
enum class AnchorSide : std::uint8_t { Interior, Top, Bottom, Left, Right };

/// A weight-2 or weight-4 parity check on data qubits.
struct Stabilizer {
  StabKind kind;
  std::vector<int> support;  // sorted data-qubit indices
  int anchor_r;              // plaquette row (-1 for the top boundary row)
  int anchor_c;              // plaquette column (-1 for the left boundary column)
  AnchorSide side;
};

/// Immutable description of the [d_x, d_z] rotated surface code on a
/// d_x x d_z grid of data qubits, indexed row-major: q = r * d_z + c.
///
/// X stabilizers are listed top-to-bottom then left-to-right, Z stabilizers
/// left-to-right then top-to-bottom; on [3,3] this reproduces the canonical
/// distance-3 check ordering, and on [3,5] the canonical rectangular one.
struct SurfaceCode {
  Distances distances;
  int n_data = 0;
  std::vector<Stabilizer> x_stabilizers;
  std::vector<Stabilizer> z_stabilizers;
  std::vector<std::vector<int>> logical_x_reps;  // one column support per column
  std::vector<std::vector<int>> logical_z_reps;  // one row support per row

  int qubit_index(int r, int c) const { return r * distances.dz + c; }
  std::pair<int, int> qubit_coord(int q) const {
    return {q / distances.dz, q % distances.dz};
  }
};

/// Builds the full lattice: interior plaquettes checkerboarded with
/// (r+c) even => Z, plus weight-2 boundary checks (X on top/bottom,
/// Z on left/right).
SurfaceCode build_code(const Distances& d);

/// (t_x, t_z) = (floor((d_x-1)/2), floor((d_z-1)/2)).
std::pair<int, int> correctable_weights(const SurfaceCode& code);

/// Data-qubit savings of [d_x, d_z] relative to the square [d_z, d_z] code,
/// in percent. Requires d_z >= d_x.
double qubit_savings_percent(const Distances& d);

}  // namespace rectsurf
