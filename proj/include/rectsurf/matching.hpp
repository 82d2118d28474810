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
#include <vector>

namespace rectsurf {

struct WeightedEdge {
  int u;
  int v;
  std::int64_t weight;
};

/// Exact maximum-weight matching in a general graph (blossom algorithm,
/// O(V^3)). Integer weights keep the dual variables integral, so the result
/// is exact. Returns mate[v] = matched vertex or -1.
///
/// With max_cardinality set, the matching has maximum cardinality and
/// maximum weight among those; negative weights are then legal, which is
/// how minimum-weight perfect matching is obtained.
std::vector<int> max_weight_matching(int n_vertices,
                                     const std::vector<WeightedEdge>& edges,
                                     bool max_cardinality);

/// Exact minimum-weight perfect matching on an even-vertex graph with the
/// given edges. Throws std::invalid_argument if no perfect matching exists.
std::vector<int> min_weight_perfect_matching_general(
    int n_vertices, const std::vector<WeightedEdge>& edges);

}  // namespace rectsurf
