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

#include <bit>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace rectsurf {

/// Fixed-length bit vector with the XOR/AND-parity operations used for
/// symplectic Pauli arithmetic. Length is in bits and is immutable.
class BitVec {
 public:
  BitVec() = default;

  explicit BitVec(std::size_t n_bits)
      : n_bits_(n_bits), words_((n_bits + 63) / 64, 0) {}

  std::size_t size() const { return n_bits_; }

  bool test(std::size_t i) const {
    return (words_[i >> 6] >> (i & 63)) & 1u;
  }

  void set(std::size_t i, bool value = true) {
    if (value) {
      words_[i >> 6] |= std::uint64_t{1} << (i & 63);
    } else {
      words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
    }
  }

  void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

  void clear() {
    for (auto& w : words_) w = 0;
  }

  bool any() const {
    for (auto w : words_) {
      if (w != 0) return true;
    }
    return false;
  }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  BitVec& operator^=(const BitVec& other) {
    require_same_size(other);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= other.words_[i];
    return *this;
  }

  friend BitVec operator^(BitVec a, const BitVec& b) {
    a ^= b;
    return a;
  }

  friend BitVec operator|(BitVec a, const BitVec& b) {
    a.require_same_size(b);
    for (std::size_t i = 0; i < a.words_.size(); ++i) a.words_[i] |= b.words_[i];
    return a;
  }

  friend BitVec operator&(BitVec a, const BitVec& b) {
    a.require_same_size(b);
    for (std::size_t i = 0; i < a.words_.size(); ++i) a.words_[i] &= b.words_[i];
    return a;
  }

  /// Parity of |this AND other|, the symplectic building block.
  bool and_parity(const BitVec& other) const {
    require_same_size(other);
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < words_.size(); ++i) {
      acc ^= words_[i] & other.words_[i];
    }
    return std::popcount(acc) & 1u;
  }

  bool operator==(const BitVec& other) const {
    return n_bits_ == other.n_bits_ && words_ == other.words_;
  }
  bool operator!=(const BitVec& other) const { return !(*this == other); }

  const std::vector<std::uint64_t>& words() const { return words_; }

  std::vector<std::size_t> set_bits() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < n_bits_; ++i) {
      if (test(i)) out.push_back(i);
    }
    return out;
  }

 private:
  void require_same_size(const BitVec& other) const {
    if (n_bits_ != other.n_bits_) {
      throw std::invalid_argument("bit vector length mismatch");
    }
  }

  std::size_t n_bits_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace rectsurf
