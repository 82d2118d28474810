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

#include <set>
#include <vector>

#include "oracles.hpp"
#include "rectsurf/code_lattice.hpp"
#include "rectsurf/noise.hpp"
#include "rectsurf/pauli.hpp"

using namespace rectsurf;

namespace {

PauliError from_text(const SurfaceCode& code, const char* text) {
  return parse_pauli(text, static_cast<std::size_t>(code.n_data));
}

std::vector<std::set<int>> triggered_supports(const std::vector<Stabilizer>& stabs,
                                              const BitVec& bits) {
  std::vector<std::set<int>> out;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits.test(i)) {
      out.emplace_back(stabs[i].support.begin(), stabs[i].support.end());
    }
  }
  return out;
}

}  // namespace

TEST_CASE("commutation basics") {
  const SurfaceCode code = build_code({3, 5});
  CHECK_FALSE(commutes(from_text(code, "X0"), from_text(code, "Z0")));
  CHECK(commutes(from_text(code, "X0"), from_text(code, "Z1")));
  CHECK(commutes(from_text(code, ""), from_text(code, "Y7,Z3,X11")));

  // Column X_L vs row Z_L overlap in exactly one qubit.
  CHECK_FALSE(commutes(from_text(code, "X0,X5,X10"),
                       from_text(code, "Z0,Z1,Z2,Z3,Z4")));
}

TEST_CASE("commutes matches the sitewise oracle on random pairs") {
  const SurfaceCode code = build_code({5, 7});
  const auto n = static_cast<std::size_t>(code.n_data);
  TrialRng rng(RngSeed{123}, 0, 0);
  for (int it = 0; it < 500; ++it) {
    PauliError a(n), b(n);
    for (std::size_t q = 0; q < n; ++q) {
      const auto bits = rng.next_u64();
      if (bits & 1) a.x.flip(q);
      if (bits & 2) a.z.flip(q);
      if (bits & 4) b.x.flip(q);
      if (bits & 8) b.z.flip(q);
    }
    CHECK(commutes(a, b) == oracle::commutes_sitewise(a, b));
  }
}

TEST_CASE("compose is XOR composition") {
  const SurfaceCode code = build_code({3, 5});
  const auto e = from_text(code, "Y6,Z3,X2");
  CHECK(compose(e, e).is_identity());
  CHECK(compose(from_text(code, "X0"), from_text(code, "Z0")) ==
        from_text(code, "Y0"));
  CHECK(compose(from_text(code, "Y6"), from_text(code, "X6")) ==
        from_text(code, "Z6"));
}

TEST_CASE("length mismatches are rejected") {
  PauliError a(4), b(5);
  CHECK_THROWS_AS((void)commutes(a, b), std::invalid_argument);
  CHECK_THROWS_AS((void)compose(a, b), std::invalid_argument);
  const SurfaceCode code = build_code({3, 3});
  CHECK_THROWS_AS((void)measure_syndrome(code, a), std::invalid_argument);
}

TEST_CASE("syndromes match the worked [3,5] example") {
  const SurfaceCode code = build_code({3, 5});

  SUBCASE("identity") {
    CHECK_FALSE(measure_syndrome(code, from_text(code, "")).any());
  }

  SUBCASE("Y6 triggers two Z checks and two X checks") {
    const Syndrome s = measure_syndrome(code, from_text(code, "Y6"));
    CHECK(triggered_supports(code.z_stabilizers, s.z_bits) ==
          std::vector<std::set<int>>{{0, 1, 5, 6}, {6, 7, 11, 12}});
    CHECK(triggered_supports(code.x_stabilizers, s.x_bits) ==
          std::vector<std::set<int>>{{1, 2, 6, 7}, {5, 6, 10, 11}});
  }

  SUBCASE("Z3 triggers two X checks only") {
    const Syndrome s = measure_syndrome(code, from_text(code, "Z3"));
    CHECK_FALSE(s.z_bits.any());
    CHECK(triggered_supports(code.x_stabilizers, s.x_bits) ==
          std::vector<std::set<int>>{{2, 3}, {3, 4, 8, 9}});
  }
}

TEST_CASE("syndrome is linear and transparent to stabilizers") {
  for (const Distances d : {Distances{3, 3}, Distances{3, 5}, Distances{5, 7}}) {
    const SurfaceCode code = build_code(d);
    const auto n = static_cast<std::size_t>(code.n_data);
    TrialRng rng(RngSeed{7}, d.dx, d.dz);

    for (int it = 0; it < 200; ++it) {
      PauliError e1(n), e2(n);
      for (std::size_t q = 0; q < n; ++q) {
        const auto bits = rng.next_u64();
        if (bits & 1) e1.x.flip(q);
        if (bits & 2) e1.z.flip(q);
        if (bits & 4) e2.x.flip(q);
        if (bits & 8) e2.z.flip(q);
      }
      const Syndrome lhs = measure_syndrome(code, compose(e1, e2));
      const Syndrome s1 = measure_syndrome(code, e1);
      const Syndrome s2 = measure_syndrome(code, e2);
      CHECK(lhs.x_bits == (s1.x_bits ^ s2.x_bits));
      CHECK(lhs.z_bits == (s1.z_bits ^ s2.z_bits));
    }

    for (const auto& list : {code.x_stabilizers, code.z_stabilizers}) {
      for (const auto& s : list) {
        const PauliError op = stabilizer_operator(code, s);
        CHECK_FALSE(measure_syndrome(code, op).any());
        CHECK(logical_failure(code, op) == std::pair{false, false});
      }
    }
  }
}

TEST_CASE("logical failure classification") {
  const SurfaceCode code35 = build_code({3, 5});
  CHECK(logical_failure(code35, from_text(code35, "")) ==
        std::pair{false, false});
  CHECK(logical_failure(code35, from_text(code35, "X0,X5,X10")) ==
        std::pair{true, false});
  CHECK(logical_failure(code35, from_text(code35, "Z0,Z1,Z2,Z3,Z4")) ==
        std::pair{false, true});

  const SurfaceCode code33 = build_code({3, 3});
  // The benign MWPM ambiguity: X0 wrongly "corrected" as X1.
  CHECK(logical_failure(code33, from_text(code33, "X0,X1")) ==
        std::pair{false, false});

  // Nonzero syndrome violates the precondition.
  CHECK_THROWS_AS(logical_failure(code33, from_text(code33, "X4")),
                  std::logic_error);
}

TEST_CASE("failure flags do not depend on the chosen representative") {
  // Exhaustive over all 4^9 Paulis of the [3,3] code, restricted to the
  // zero-syndrome ones: overlap parity is identical for every row and for
  // every column.
  const SurfaceCode code = build_code({3, 3});
  const auto n = static_cast<std::size_t>(code.n_data);
  int zero_syndrome_count = 0;
  for (std::uint32_t xm = 0; xm < 512; ++xm) {
    for (std::uint32_t zm = 0; zm < 512; ++zm) {
      PauliError e(n);
      for (std::size_t q = 0; q < 9; ++q) {
        if (xm & (1u << q)) e.x.set(q);
        if (zm & (1u << q)) e.z.set(q);
      }
      if (measure_syndrome(code, e).any()) continue;
      ++zero_syndrome_count;

      int first_row_parity = -1, first_col_parity = -1;
      for (const auto& rep : code.logical_z_reps) {
        int parity = 0;
        for (int q : rep) parity ^= e.x.test(static_cast<std::size_t>(q));
        if (first_row_parity == -1) first_row_parity = parity;
        REQUIRE(parity == first_row_parity);
      }
      for (const auto& rep : code.logical_x_reps) {
        int parity = 0;
        for (int q : rep) parity ^= e.z.test(static_cast<std::size_t>(q));
        if (first_col_parity == -1) first_col_parity = parity;
        REQUIRE(parity == first_col_parity);
      }
    }
  }
  // Normalizer size: 2^(n-1) stabilizer products x 4 logical classes.
  CHECK(zero_syndrome_count == 1024);
}

TEST_CASE("pauli text round trip and parse errors") {
  const SurfaceCode code = build_code({3, 5});
  CHECK(format_pauli(from_text(code, "X3,Y6,Z10")) == "X3,Y6,Z10");
  CHECK(format_pauli(from_text(code, "Z10, Y6 ,X3")) == "X3,Y6,Z10");
  CHECK(format_pauli(from_text(code, "X3,Z3")) == "Y3");
  CHECK(format_pauli(from_text(code, "")) == "I");
  CHECK(from_text(code, "I5").is_identity());

  CHECK_THROWS_WITH_AS(from_text(code, "Q9"),
                       doctest::Contains("\"Q9\""), std::invalid_argument);
  CHECK_THROWS_AS(from_text(code, "X99"), std::invalid_argument);
  CHECK_THROWS_AS(from_text(code, "X"), std::invalid_argument);
  CHECK_THROWS_AS(from_text(code, "X1a"), std::invalid_argument);
}
