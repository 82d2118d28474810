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

#include <string>
#include <string_view>
#include <utility>

#include "rectsurf/bitvec.hpp"
#include "rectsurf/code_lattice.hpp"

namespace rectsurf {

/// A Pauli operator on the data qubits as a symplectic bit-vector pair.
/// Qubit q carries an X component iff x.test(q), a Z component iff
/// z.test(q), and Y iff both. Global phases are not tracked.
struct PauliError {
  BitVec x;
  BitVec z;

  PauliError() = default;
  explicit PauliError(std::size_t n_qubits) : x(n_qubits), z(n_qubits) {}

  std::size_t n_qubits() const { return x.size(); }
  bool is_identity() const { return !x.any() && !z.any(); }

  /// Number of qubits acted on non-trivially.
  std::size_t weight() const { return (x | z).count(); }

  void apply_x(std::size_t q) { x.flip(q); }
  void apply_z(std::size_t q) { z.flip(q); }
  void apply_y(std::size_t q) {
    x.flip(q);
    z.flip(q);
  }

  bool operator==(const PauliError& other) const {
    return x == other.x && z == other.z;
  }
};

/// Triggered-stabilizer bit vectors: z_bits over the Z stabilizers (they
/// detect X/Y components), x_bits over the X stabilizers (Z/Y components).
struct Syndrome {
  BitVec x_bits;
  BitVec z_bits;

  bool any() const { return x_bits.any() || z_bits.any(); }
  bool operator==(const Syndrome& other) const {
    return x_bits == other.x_bits && z_bits == other.z_bits;
  }
};

/// True iff a and b commute under the symplectic form
/// <a.x, b.z> xor <a.z, b.x> = 0.
bool commutes(const PauliError& a, const PauliError& b);

/// Phaseless group product: componentwise XOR.
PauliError compose(const PauliError& a, const PauliError& b);

/// Perfect single-shot syndrome extraction.
Syndrome measure_syndrome(const SurfaceCode& code, const PauliError& e);

/// Classifies a zero-syndrome residual against the canonical logical
/// representatives (row 0 for Z_L, column 0 for X_L). x_fail means the
/// residual acts as a logical X, z_fail as a logical Z. Throws
/// std::logic_error when the residual has a nonzero syndrome, which would
/// indicate a decoder bug.
std::pair<bool, bool> logical_failure(const SurfaceCode& code,
                                      const PauliError& residual);

/// Converts a stabilizer to its PauliError form.
PauliError stabilizer_operator(const SurfaceCode& code, const Stabilizer& s);

/// Parses the debug notation "X3,Y6,Z10" (tokens compose by XOR, so
/// "X3,Z3" is Y3). An empty string is the identity. Throws
/// std::invalid_argument naming the offending token.
PauliError parse_pauli(std::string_view text, std::size_t n_qubits);

/// Canonical text form of an error: per-qubit letters in index order,
/// "I" for the identity.
std::string format_pauli(const PauliError& e);

}  // namespace rectsurf
