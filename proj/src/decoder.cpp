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

#include "rectsurf/decoder.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "rectsurf/matching.hpp"

namespace rectsurf {

namespace {

// Adjacency entry: (neighbor vertex, edge qubit). Parallel edges are kept,
// e.g. a weight-4 check whose two exposed qubits both reach the boundary.
struct Adj {
  int to;
  int qubit;
};

}  // namespace

DecodingGraph::DecodingGraph(const SurfaceCode& code, GraphKind kind)
    : kind_(kind), n_data_(code.n_data) {
  const auto& stabs =
      (kind == GraphKind::XGraph) ? code.x_stabilizers : code.z_stabilizers;
  n_stabilizers_ = static_cast<int>(stabs.size());
  const int boundary_vertex = n_stabilizers_;

  // Exactly one edge per data qubit: between the two same-kind stabilizers
  // containing it, or from its single stabilizer to the boundary.
  std::vector<std::vector<int>> owners(code.n_data);
  for (int s = 0; s < n_stabilizers_; ++s) {
    for (int q : stabs[s].support) owners[q].push_back(s);
  }
  edges_.reserve(code.n_data);
  for (int q = 0; q < code.n_data; ++q) {
    const auto& own = owners[q];
    if (own.size() == 1) {
      edges_.push_back({own[0], boundary_vertex, q, 1});
    } else if (own.size() == 2) {
      edges_.push_back({own[0], own[1], q, 1});
    } else {
      throw std::logic_error(
          "data qubit is not covered by 1 or 2 stabilizers of one kind");
    }
  }

  std::vector<std::vector<Adj>> adj(n_stabilizers_ + 1);
  for (const auto& e : edges_) {
    adj[e.u].push_back({e.v, e.qubit});
    adj[e.v].push_back({e.u, e.qubit});
  }

  // All-pairs shortest paths by per-source BFS. Among equal-length paths the
  // witness is the lexicographically least qubit sequence read from the
  // lower-numbered vertex (boundary counts as the highest vertex).
  const int n_vertices = n_stabilizers_ + 1;
  const std::size_t table = static_cast<std::size_t>(n_vertices) * n_vertices;
  dist_.assign(table, std::numeric_limits<int>::max());
  path_qubits_.assign(table, {});
  path_masks_.assign(table, BitVec(static_cast<std::size_t>(n_data_)));

  std::vector<int> dist(n_vertices);
  std::vector<std::vector<int>> best(n_vertices);
  for (int src = 0; src < n_vertices; ++src) {
    std::fill(dist.begin(), dist.end(), std::numeric_limits<int>::max());
    for (auto& p : best) p.clear();
    dist[src] = 0;

    // Layered relaxation; the best path to v extends the best path of some
    // neighbor in the previous layer (lexicographic order is prefix-stable).
    std::vector<int> frontier = {src};
    int layer = 0;
    while (!frontier.empty()) {
      ++layer;
      std::vector<int> next;
      for (int u : frontier) {
        for (const auto& [v, qubit] : adj[u]) {
          if (dist[v] < layer) continue;
          std::vector<int> candidate = best[u];
          candidate.push_back(qubit);
          if (dist[v] > layer) {
            dist[v] = layer;
            best[v] = std::move(candidate);
            next.push_back(v);
          } else if (candidate < best[v]) {
            best[v] = std::move(candidate);
          }
        }
      }
      std::sort(next.begin(), next.end());
      next.erase(std::unique(next.begin(), next.end()), next.end());
      frontier = std::move(next);
    }

    for (int t = 0; t < n_vertices; ++t) {
      if (dist[t] == std::numeric_limits<int>::max()) {
        throw std::logic_error("decoding graph is not connected");
      }
      const std::size_t idx =
          static_cast<std::size_t>(src) * n_vertices + static_cast<std::size_t>(t);
      dist_[idx] = dist[t];
      if (src < t) {
        path_qubits_[idx] = best[t];
        BitVec mask(static_cast<std::size_t>(n_data_));
        for (int q : best[t]) mask.set(static_cast<std::size_t>(q));
        path_masks_[idx] = std::move(mask);
      }
    }
  }

  // Mirror the canonical (min, max) witnesses onto the transposed entries.
  for (int u = 0; u < n_vertices; ++u) {
    for (int v = 0; v < u; ++v) {
      const std::size_t canon =
          static_cast<std::size_t>(v) * n_vertices + static_cast<std::size_t>(u);
      const std::size_t mirror =
          static_cast<std::size_t>(u) * n_vertices + static_cast<std::size_t>(v);
      path_qubits_[mirror] = path_qubits_[canon];
      path_masks_[mirror] = path_masks_[canon];
    }
  }
}

DecodingGraph build_decoding_graph(const SurfaceCode& code, GraphKind kind) {
  return DecodingGraph(code, kind);
}

MatchingInstance all_pairs_defect_distances(const DecodingGraph& g,
                                            const std::vector<int>& defects) {
  for (int d : defects) {
    if (d < 0 || d >= g.n_stabilizers()) {
      throw std::invalid_argument("defect is not a stabilizer vertex");
    }
  }
  MatchingInstance inst;
  inst.graph = &g;
  inst.defects = defects;
  std::sort(inst.defects.begin(), inst.defects.end());
  const std::size_t m = inst.defects.size();
  inst.defect_distance.resize(m * m);
  inst.boundary_distance.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    inst.boundary_distance[i] =
        static_cast<std::int32_t>(g.distance(inst.defects[i], g.boundary()));
    for (std::size_t j = 0; j < m; ++j) {
      inst.defect_distance[i * m + j] = static_cast<std::int32_t>(
          g.distance(inst.defects[i], inst.defects[j]));
    }
  }
  return inst;
}

Matching min_weight_perfect_matching(const MatchingInstance& inst) {
  Matching result;
  const int m = inst.size();
  if (m == 0) return result;
  if (m == 1) {
    result.pairs.push_back({0, kBoundary});
    result.total_weight = inst.boundary_distance[0];
    return result;
  }
  if (m == 2) {
    const std::int64_t paired = inst.dist(0, 1);
    const std::int64_t via_boundary =
        std::int64_t{inst.boundary_distance[0]} + inst.boundary_distance[1];
    if (paired <= via_boundary) {
      result.pairs.push_back({0, 1});
      result.total_weight = paired;
    } else {
      result.pairs.push_back({0, kBoundary});
      result.pairs.push_back({1, kBoundary});
      result.total_weight = via_boundary;
    }
    return result;
  }

  // Standard exactness-preserving reduction: vertices 0..m-1 are defects,
  // m..2m-1 their boundary copies; copies pair up among themselves for free.
  std::vector<WeightedEdge> edges;
  edges.reserve(static_cast<std::size_t>(m) * m);
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      edges.push_back({i, j, inst.dist(i, j)});
    }
    edges.push_back({i, m + i, inst.boundary_distance[i]});
    for (int j = i + 1; j < m; ++j) {
      edges.push_back({m + i, m + j, 0});
    }
  }
  const auto mate = min_weight_perfect_matching_general(2 * m, edges);

  for (int i = 0; i < m; ++i) {
    if (mate[i] == m + i) {
      result.pairs.push_back({i, kBoundary});
      result.total_weight += inst.boundary_distance[i];
    } else if (mate[i] > i) {
      result.pairs.push_back({i, mate[i]});
      result.total_weight += inst.dist(i, mate[i]);
    }
  }
  return result;
}

Decoder::Decoder(const SurfaceCode& code)
    : code_(&code),
      x_graph_(code, GraphKind::XGraph),
      z_graph_(code, GraphKind::ZGraph),
      logical_z_row0_(static_cast<std::size_t>(code.n_data)),
      logical_x_col0_(static_cast<std::size_t>(code.n_data)) {
  const auto to_mask = [&](const std::vector<int>& support) {
    BitVec mask(static_cast<std::size_t>(code.n_data));
    for (int q : support) mask.set(static_cast<std::size_t>(q));
    return mask;
  };
  for (const auto& s : code.x_stabilizers) x_stab_masks_.push_back(to_mask(s.support));
  for (const auto& s : code.z_stabilizers) z_stab_masks_.push_back(to_mask(s.support));
  logical_z_row0_ = to_mask(code.logical_z_reps[0]);
  logical_x_col0_ = to_mask(code.logical_x_reps[0]);
}

Syndrome Decoder::measure(const PauliError& e) const {
  Syndrome s;
  s.x_bits = BitVec(x_stab_masks_.size());
  s.z_bits = BitVec(z_stab_masks_.size());
  for (std::size_t i = 0; i < x_stab_masks_.size(); ++i) {
    if (x_stab_masks_[i].and_parity(e.z)) s.x_bits.set(i);
  }
  for (std::size_t i = 0; i < z_stab_masks_.size(); ++i) {
    if (z_stab_masks_[i].and_parity(e.x)) s.z_bits.set(i);
  }
  return s;
}

namespace {

void apply_species_correction(const DecodingGraph& g, const BitVec& bits,
                              BitVec& correction) {
  std::vector<int> defects;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits.test(i)) defects.push_back(static_cast<int>(i));
  }
  if (defects.empty()) return;
  const auto inst = all_pairs_defect_distances(g, defects);
  const auto matching = min_weight_perfect_matching(inst);
  for (const auto& pair : matching.pairs) {
    const int u = inst.defects[pair.a];
    const int v = (pair.b == kBoundary) ? g.boundary() : inst.defects[pair.b];
    correction ^= g.witness_mask(u, v);
  }
}

}  // namespace

PauliError Decoder::decode(const Syndrome& s) const {
  if (s.x_bits.size() != x_stab_masks_.size() ||
      s.z_bits.size() != z_stab_masks_.size()) {
    throw std::invalid_argument("syndrome size does not match the code");
  }
  PauliError correction(static_cast<std::size_t>(code_->n_data));
  // Z defects locate X errors; X defects locate Z errors.
  apply_species_correction(z_graph_, s.z_bits, correction.x);
  apply_species_correction(x_graph_, s.x_bits, correction.z);
  return correction;
}

std::pair<bool, bool> Decoder::classify(const PauliError& residual) const {
  return {logical_z_row0_.and_parity(residual.x),
          logical_x_col0_.and_parity(residual.z)};
}

TrialOutcome run_single_decode(const Decoder& decoder, const ChannelParams& ch,
                               RngSeed seed, std::uint64_t stream,
                               std::uint64_t trial) {
  const PauliError error =
      sample_error(decoder.code(), ch, seed, stream, trial);
  const Syndrome syndrome = decoder.measure(error);
  const PauliError correction = decoder.decode(syndrome);
  const PauliError residual = compose(error, correction);
  if (decoder.measure(residual).any()) {
    throw std::logic_error(
        "decoder contract violation: correction does not clear the syndrome");
  }
  const auto [x_fail, z_fail] = decoder.classify(residual);
  return {x_fail, z_fail};
}

PauliError decode(const SurfaceCode& code, const Syndrome& s) {
  return Decoder(code).decode(s);
}

TrialOutcome run_single_decode(const SurfaceCode& code, const ChannelParams& ch,
                               RngSeed seed, std::uint64_t stream,
                               std::uint64_t trial) {
  return run_single_decode(Decoder(code), ch, seed, stream, trial);
}

}  // namespace rectsurf
