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

#include "rectsurf/bitvec.hpp"
#include "rectsurf/code_lattice.hpp"
#include "rectsurf/noise.hpp"
#include "rectsurf/pauli.hpp"

namespace rectsurf {

/// The Z graph (vertices = Z stabilizers) locates X errors; the X graph
/// locates Z errors.
enum class GraphKind : std::uint8_t { XGraph, ZGraph };

struct GraphEdge {
  int u;      // stabilizer vertex
  int v;      // stabilizer vertex or the boundary vertex
  int qubit;  // the data qubit this edge stands for
  int weight;
};

/// Matching graph of one stabilizer species: one vertex per stabilizer plus
/// a single virtual boundary vertex, and exactly one edge per data qubit.
/// All shortest paths (with deterministic, lexicographically-least witness
/// qubit sequences) are precomputed at construction, so per-trial decoding
/// only reads tables.
class DecodingGraph {
 public:
  DecodingGraph(const SurfaceCode& code, GraphKind kind);

  GraphKind kind() const { return kind_; }
  int n_stabilizers() const { return n_stabilizers_; }
  /// The virtual boundary vertex id (== n_stabilizers()).
  int boundary() const { return n_stabilizers_; }
  const std::vector<GraphEdge>& edges() const { return edges_; }

  /// Shortest-path distance between vertices (boundary included).
  int distance(int u, int v) const { return dist_[pair_index(u, v)]; }

  /// Witness path qubits for the canonical (min, max) orientation of (u,v).
  const std::vector<int>& witness_qubits(int u, int v) const {
    return path_qubits_[pair_index(u, v)];
  }

  /// Same witness as a data-qubit mask, for O(words) correction updates.
  const BitVec& witness_mask(int u, int v) const {
    return path_masks_[pair_index(u, v)];
  }

 private:
  std::size_t pair_index(int u, int v) const {
    return static_cast<std::size_t>(u) * (n_stabilizers_ + 1) +
           static_cast<std::size_t>(v);
  }

  GraphKind kind_;
  int n_stabilizers_ = 0;
  int n_data_ = 0;
  std::vector<GraphEdge> edges_;
  std::vector<int> dist_;
  std::vector<std::vector<int>> path_qubits_;
  std::vector<BitVec> path_masks_;
};

DecodingGraph build_decoding_graph(const SurfaceCode& code, GraphKind kind);

/// Defect set of one syndrome species together with its mutual and boundary
/// distances. Witness paths are shared with the originating graph.
struct MatchingInstance {
  const DecodingGraph* graph = nullptr;
  std::vector<int> defects;  // vertex ids, ascending
  std::vector<std::int32_t> defect_distance;    // size() x size(), row-major
  std::vector<std::int32_t> boundary_distance;  // size()

  int size() const { return static_cast<int>(defects.size()); }
  std::int32_t dist(int i, int j) const {
    return defect_distance[static_cast<std::size_t>(i) * defects.size() + j];
  }
  const std::vector<int>& witness(int i, int j) const {
    return graph->witness_qubits(defects[i], defects[j]);
  }
  const std::vector<int>& boundary_witness(int i) const {
    return graph->witness_qubits(defects[i], graph->boundary());
  }
};

MatchingInstance all_pairs_defect_distances(const DecodingGraph& g,
                                            const std::vector<int>& defects);

/// One matched pair; b == kBoundary means a is matched to the boundary.
struct MatchedPair {
  int a;
  int b;
};
inline constexpr int kBoundary = -1;

struct Matching {
  std::vector<MatchedPair> pairs;  // instance-local defect indices
  std::int64_t total_weight = 0;
};

/// Exact MWPM over the boundary-augmented construction: complete graph on
/// defects, one boundary copy per defect, free edges among boundary copies.
Matching min_weight_perfect_matching(const MatchingInstance& inst);

/// Stateful decoder bound to one code: caches both decoding graphs,
/// stabilizer masks and the canonical logical masks.
class Decoder {
 public:
  explicit Decoder(const SurfaceCode& code);

  const SurfaceCode& code() const { return *code_; }
  const DecodingGraph& graph(GraphKind kind) const {
    return kind == GraphKind::XGraph ? x_graph_ : z_graph_;
  }

  Syndrome measure(const PauliError& e) const;

  /// Correction with measure(correction) == s, by independent X/Z matching.
  PauliError decode(const Syndrome& s) const;

  /// (x_fail, z_fail) of a zero-syndrome residual.
  std::pair<bool, bool> classify(const PauliError& residual) const;

 private:
  const SurfaceCode* code_;
  DecodingGraph x_graph_;
  DecodingGraph z_graph_;
  std::vector<BitVec> x_stab_masks_;
  std::vector<BitVec> z_stab_masks_;
  BitVec logical_z_row0_;
  BitVec logical_x_col0_;
};

struct TrialOutcome {
  bool x_fail = false;
  bool z_fail = false;
  bool any_fail() const { return x_fail || z_fail; }
};

/// Sample -> measure -> decode -> classify, for one Monte Carlo trial.
/// Throws std::logic_error if the correction fails to clear the syndrome.
TrialOutcome run_single_decode(const Decoder& decoder, const ChannelParams& ch,
                               RngSeed seed, std::uint64_t stream,
                               std::uint64_t trial);

/// Convenience overloads working directly on a code.
PauliError decode(const SurfaceCode& code, const Syndrome& s);
TrialOutcome run_single_decode(const SurfaceCode& code, const ChannelParams& ch,
                               RngSeed seed, std::uint64_t stream,
                               std::uint64_t trial);

}  // namespace rectsurf
