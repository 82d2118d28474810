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

#include "rectsurf/pauli.hpp"

#include <cctype>
#include <stdexcept>

namespace rectsurf {

bool commutes(const PauliError& a, const PauliError& b) {
  return !(a.x.and_parity(b.z) ^ a.z.and_parity(b.x));
}

PauliError compose(const PauliError& a, const PauliError& b) {
  PauliError out = a;
  out.x ^= b.x;
  out.z ^= b.z;
  return out;
}

namespace {

bool odd_support_overlap(const std::vector<int>& support, const BitVec& bits) {
  bool parity = false;
  for (int q : support) parity ^= bits.test(static_cast<std::size_t>(q));
  return parity;
}

}  // namespace

Syndrome measure_syndrome(const SurfaceCode& code, const PauliError& e) {
  if (e.n_qubits() != static_cast<std::size_t>(code.n_data)) {
    throw std::invalid_argument("error size does not match the code");
  }
  Syndrome s;
  s.x_bits = BitVec(code.x_stabilizers.size());
  s.z_bits = BitVec(code.z_stabilizers.size());
  for (std::size_t i = 0; i < code.x_stabilizers.size(); ++i) {
    if (odd_support_overlap(code.x_stabilizers[i].support, e.z)) {
      s.x_bits.set(i);
    }
  }
  for (std::size_t i = 0; i < code.z_stabilizers.size(); ++i) {
    if (odd_support_overlap(code.z_stabilizers[i].support, e.x)) {
      s.z_bits.set(i);
    }
  }
  return s;
}

std::pair<bool, bool> logical_failure(const SurfaceCode& code,
                                      const PauliError& residual) {
  if (measure_syndrome(code, residual).any()) {
    throw std::logic_error(
        "logical_failure called on a residual with nonzero syndrome");
  }
  const bool x_fail = odd_support_overlap(code.logical_z_reps[0], residual.x);
  const bool z_fail = odd_support_overlap(code.logical_x_reps[0], residual.z);
  return {x_fail, z_fail};
}

PauliError stabilizer_operator(const SurfaceCode& code, const Stabilizer& s) {
  PauliError e(static_cast<std::size_t>(code.n_data));
  for (int q : s.support) {
    if (s.kind == StabKind::X) {
      e.x.set(static_cast<std::size_t>(q));
    } else {
      e.z.set(static_cast<std::size_t>(q));
    }
  }
  return e;
}

PauliError parse_pauli(std::string_view text, std::size_t n_qubits) {
  PauliError e(n_qubits);
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    pos = end + 1;

    std::size_t b = 0, t = raw.size();
    while (b < t && std::isspace(static_cast<unsigned char>(raw[b]))) ++b;
    while (t > b && std::isspace(static_cast<unsigned char>(raw[t - 1]))) --t;
    std::string_view token = raw.substr(b, t - b);
    if (token.empty()) continue;

    const char letter = static_cast<char>(
        std::toupper(static_cast<unsigned char>(token.front())));
    if (letter != 'X' && letter != 'Y' && letter != 'Z' && letter != 'I') {
      throw std::invalid_argument("unknown Pauli letter in token \"" +
                                  std::string(token) + "\"");
    }
    std::size_t q = 0;
    bool has_digit = false;
    for (std::size_t i = 1; i < token.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(token[i]))) {
        throw std::invalid_argument("bad qubit index in token \"" +
                                    std::string(token) + "\"");
      }
      q = q * 10 + static_cast<std::size_t>(token[i] - '0');
      has_digit = true;
    }
    if (!has_digit) {
      throw std::invalid_argument("missing qubit index in token \"" +
                                  std::string(token) + "\"");
    }
    if (q >= n_qubits) {
      throw std::invalid_argument("qubit index out of range in token \"" +
                                  std::string(token) + "\"");
    }
    switch (letter) {
      case 'X':
        e.apply_x(q);
        break;
      case 'Y':
        e.apply_y(q);
        break;
      case 'Z':
        e.apply_z(q);
        break;
      default:
        break;  // I: no-op
    }
  }
  return e;
}

std::string format_pauli(const PauliError& e) {
  std::string out;
  for (std::size_t q = 0; q < e.n_qubits(); ++q) {
    const bool xb = e.x.test(q);
    const bool zb = e.z.test(q);
    if (!xb && !zb) continue;
    if (!out.empty()) out += ',';
    out += xb ? (zb ? 'Y' : 'X') : 'Z';
    out += std::to_string(q);
  }
  return out.empty() ? "I" : out;
}

}  // namespace rectsurf
