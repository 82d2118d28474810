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

// Primal-dual blossom algorithm for maximum-weight matching, following the
// classic Galil formulation. Vertex duals, edge slacks and deltas are kept
// pre-multiplied by two so that integer weights never leave the integers.

#include "rectsurf/matching.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace rectsurf {

namespace {

class BlossomMatcher {
 public:
  BlossomMatcher(int n_vertices, const std::vector<WeightedEdge>& edges,
                 bool max_cardinality)
      : nvertex_(n_vertices), edges_(edges), maxcardinality_(max_cardinality) {
    max_weight_ = 0;
    for (const auto& e : edges_) {
      if (e.u < 0 || e.v < 0 || e.u >= nvertex_ || e.v >= nvertex_ ||
          e.u == e.v) {
        throw std::invalid_argument("matching: bad edge endpoints");
      }
      max_weight_ = std::max(max_weight_, e.weight);
    }
    const int nedge = static_cast<int>(edges_.size());
    endpoint_.resize(2 * nedge);
    neighbend_.assign(nvertex_, {});
    for (int k = 0; k < nedge; ++k) {
      endpoint_[2 * k] = edges_[k].u;
      endpoint_[2 * k + 1] = edges_[k].v;
      neighbend_[edges_[k].u].push_back(2 * k + 1);
      neighbend_[edges_[k].v].push_back(2 * k);
    }
    mate_.assign(nvertex_, -1);
    label_.assign(2 * nvertex_, 0);
    labelend_.assign(2 * nvertex_, -1);
    inblossom_.resize(nvertex_);
    for (int v = 0; v < nvertex_; ++v) inblossom_[v] = v;
    blossomparent_.assign(2 * nvertex_, -1);
    blossomchilds_.assign(2 * nvertex_, {});
    blossombase_.resize(2 * nvertex_);
    for (int v = 0; v < nvertex_; ++v) blossombase_[v] = v;
    for (int b = nvertex_; b < 2 * nvertex_; ++b) blossombase_[b] = -1;
    blossomendps_.assign(2 * nvertex_, {});
    bestedge_.assign(2 * nvertex_, -1);
    blossombestedges_.assign(2 * nvertex_, {});
    has_blossombestedges_.assign(2 * nvertex_, false);
    for (int b = 2 * nvertex_ - 1; b >= nvertex_; --b) {
      unusedblossoms_.push_back(b);
    }
    dualvar_.assign(2 * nvertex_, 0);
    for (int v = 0; v < nvertex_; ++v) dualvar_[v] = max_weight_;
    allowedge_.assign(nedge, false);
  }

  std::vector<int> solve() {
    for (int stage = 0; stage < nvertex_; ++stage) {
      std::fill(label_.begin(), label_.end(), 0);
      std::fill(bestedge_.begin(), bestedge_.end(), -1);
      for (int b = nvertex_; b < 2 * nvertex_; ++b) {
        has_blossombestedges_[b] = false;
        blossombestedges_[b].clear();
      }
      std::fill(allowedge_.begin(), allowedge_.end(), false);
      queue_.clear();

      for (int v = 0; v < nvertex_; ++v) {
        if (mate_[v] == -1 && label_[inblossom_[v]] == 0) {
          assign_label(v, 1, -1);
        }
      }

      bool augmented = false;
      while (true) {
        while (!queue_.empty() && !augmented) {
          const int v = queue_.back();
          queue_.pop_back();
          assert(label_[inblossom_[v]] == 1);

          for (int p : neighbend_[v]) {
            const int k = p / 2;
            const int w = endpoint_[p];
            if (inblossom_[v] == inblossom_[w]) continue;
            std::int64_t kslack = 0;
            if (!allowedge_[k]) {
              kslack = slack(k);
              if (kslack <= 0) allowedge_[k] = true;
            }
            if (allowedge_[k]) {
              if (label_[inblossom_[w]] == 0) {
                assign_label(w, 2, p ^ 1);
              } else if (label_[inblossom_[w]] == 1) {
                const int base = scan_blossom(v, w);
                if (base >= 0) {
                  add_blossom(base, k);
                } else {
                  augment_matching(k);
                  augmented = true;
                  break;
                }
              } else if (label_[w] == 0) {
                assert(label_[inblossom_[w]] == 2);
                label_[w] = 2;
                labelend_[w] = p ^ 1;
              }
            } else if (label_[inblossom_[w]] == 1) {
              const int b = inblossom_[v];
              if (bestedge_[b] == -1 || kslack < slack(bestedge_[b])) {
                bestedge_[b] = k;
              }
            } else if (label_[w] == 0) {
              if (bestedge_[w] == -1 || kslack < slack(bestedge_[w])) {
                bestedge_[w] = k;
              }
            }
          }
        }
        if (augmented) break;

        // Dual update. deltatype 1: dual floor; 2: S-to-free edge;
        // 3: S-to-S edge; 4: T-blossom expansion.
        int deltatype = -1;
        std::int64_t delta = 0;
        int deltaedge = -1;
        int deltablossom = -1;

        if (!maxcardinality_) {
          deltatype = 1;
          delta = *std::min_element(dualvar_.begin(),
                                    dualvar_.begin() + nvertex_);
        }

        for (int v = 0; v < nvertex_; ++v) {
          if (label_[inblossom_[v]] == 0 && bestedge_[v] != -1) {
            const std::int64_t d = slack(bestedge_[v]);
            if (deltatype == -1 || d < delta) {
              delta = d;
              deltatype = 2;
              deltaedge = bestedge_[v];
            }
          }
        }

        for (int b = 0; b < 2 * nvertex_; ++b) {
          if (blossomparent_[b] == -1 && label_[b] == 1 &&
              bestedge_[b] != -1) {
            const std::int64_t kslack = slack(bestedge_[b]);
            assert(kslack % 2 == 0);
            const std::int64_t d = kslack / 2;
            if (deltatype == -1 || d < delta) {
              delta = d;
              deltatype = 3;
              deltaedge = bestedge_[b];
            }
          }
        }

        for (int b = nvertex_; b < 2 * nvertex_; ++b) {
          if (blossombase_[b] >= 0 && blossomparent_[b] == -1 &&
              label_[b] == 2 && (deltatype == -1 || dualvar_[b] < delta)) {
            delta = dualvar_[b];
            deltatype = 4;
            deltablossom = b;
          }
        }

        if (deltatype == -1) {
          // Max-cardinality optimum reached; final update keeps duals valid.
          assert(maxcardinality_);
          deltatype = 1;
          delta = std::max<std::int64_t>(
              0, *std::min_element(dualvar_.begin(),
                                   dualvar_.begin() + nvertex_));
        }

        for (int v = 0; v < nvertex_; ++v) {
          const int lbl = label_[inblossom_[v]];
          if (lbl == 1) {
            dualvar_[v] -= delta;
          } else if (lbl == 2) {
            dualvar_[v] += delta;
          }
        }
        for (int b = nvertex_; b < 2 * nvertex_; ++b) {
          if (blossombase_[b] >= 0 && blossomparent_[b] == -1) {
            if (label_[b] == 1) {
              dualvar_[b] += delta;
            } else if (label_[b] == 2) {
              dualvar_[b] -= delta;
            }
          }
        }

        if (deltatype == 1) {
          break;
        } else if (deltatype == 2) {
          allowedge_[deltaedge] = true;
          int i = edges_[deltaedge].u;
          if (label_[inblossom_[i]] == 0) i = edges_[deltaedge].v;
          assert(label_[inblossom_[i]] == 1);
          queue_.push_back(i);
        } else if (deltatype == 3) {
          allowedge_[deltaedge] = true;
          assert(label_[inblossom_[edges_[deltaedge].u]] == 1);
          queue_.push_back(edges_[deltaedge].u);
        } else {
          expand_blossom(deltablossom, false);
        }
      }

      if (!augmented) break;

      for (int b = nvertex_; b < 2 * nvertex_; ++b) {
        if (blossomparent_[b] == -1 && blossombase_[b] >= 0 &&
            label_[b] == 1 && dualvar_[b] == 0) {
          expand_blossom(b, true);
        }
      }
    }

    std::vector<int> result(nvertex_, -1);
    for (int v = 0; v < nvertex_; ++v) {
      if (mate_[v] >= 0) result[v] = endpoint_[mate_[v]];
    }
    for (int v = 0; v < nvertex_; ++v) {
      assert(result[v] == -1 || result[result[v]] == v);
    }
    return result;
  }

 private:
  std::int64_t slack(int k) const {
    return dualvar_[edges_[k].u] + dualvar_[edges_[k].v] -
           2 * edges_[k].weight;
  }

  void blossom_leaves(int b, std::vector<int>& out) const {
    if (b < nvertex_) {
      out.push_back(b);
      return;
    }
    for (int t : blossomchilds_[b]) blossom_leaves(t, out);
  }

  void assign_label(int w, int t, int p) {
    const int b = inblossom_[w];
    assert(label_[w] == 0 && label_[b] == 0);
    label_[w] = label_[b] = t;
    labelend_[w] = labelend_[b] = p;
    bestedge_[w] = bestedge_[b] = -1;
    if (t == 1) {
      scratch_leaves_.clear();
      blossom_leaves(b, scratch_leaves_);
      queue_.insert(queue_.end(), scratch_leaves_.begin(),
                    scratch_leaves_.end());
    } else if (t == 2) {
      const int base = blossombase_[b];
      assert(mate_[base] >= 0);
      assign_label(endpoint_[mate_[base]], 1, mate_[base] ^ 1);
    }
  }

  // Trace back from v and w; returns the base of a new blossom, or -1 if
  // the paths lead to different roots (an augmenting path).
  int scan_blossom(int v, int w) {
    std::vector<int> path;
    int base = -1;
    while (v != -1 || w != -1) {
      int b = inblossom_[v];
      if (label_[b] & 4) {
        base = blossombase_[b];
        break;
      }
      assert(label_[b] == 1);
      path.push_back(b);
      label_[b] = 5;
      assert(labelend_[b] == mate_[blossombase_[b]]);
      if (labelend_[b] == -1) {
        v = -1;
      } else {
        v = endpoint_[labelend_[b]];
        b = inblossom_[v];
        assert(label_[b] == 2);
        assert(labelend_[b] >= 0);
        v = endpoint_[labelend_[b]];
      }
      if (w != -1) std::swap(v, w);
    }
    for (int b : path) label_[b] = 1;
    return base;
  }

  // Shrink the S...S path through edge k and base into a new blossom.
  void add_blossom(int base, int k) {
    int v = edges_[k].u;
    int w = edges_[k].v;
    const int bb = inblossom_[base];
    int bv = inblossom_[v];
    int bw = inblossom_[w];

    const int b = unusedblossoms_.back();
    unusedblossoms_.pop_back();
    blossombase_[b] = base;
    blossomparent_[b] = -1;
    blossomparent_[bb] = b;

    std::vector<int>& path = blossomchilds_[b];
    std::vector<int>& endps = blossomendps_[b];
    path.clear();
    endps.clear();

    while (bv != bb) {
      blossomparent_[bv] = b;
      path.push_back(bv);
      endps.push_back(labelend_[bv]);
      assert(label_[bv] == 2 ||
             (label_[bv] == 1 && labelend_[bv] == mate_[blossombase_[bv]]));
      assert(labelend_[bv] >= 0);
      v = endpoint_[labelend_[bv]];
      bv = inblossom_[v];
    }
    path.push_back(bb);
    std::reverse(path.begin(), path.end());
    std::reverse(endps.begin(), endps.end());
    endps.push_back(2 * k);

    while (bw != bb) {
      blossomparent_[bw] = b;
      path.push_back(bw);
      endps.push_back(labelend_[bw] ^ 1);
      assert(label_[bw] == 2 ||
             (label_[bw] == 1 && labelend_[bw] == mate_[blossombase_[bw]]));
      assert(labelend_[bw] >= 0);
      w = endpoint_[labelend_[bw]];
      bw = inblossom_[w];
    }

    assert(label_[bb] == 1);
    label_[b] = 1;
    labelend_[b] = labelend_[bb];
    dualvar_[b] = 0;

    scratch_leaves_.clear();
    blossom_leaves(b, scratch_leaves_);
    for (int leaf : scratch_leaves_) {
      if (label_[inblossom_[leaf]] == 2) queue_.push_back(leaf);
      inblossom_[leaf] = b;
    }

    // Merge least-slack edge lists of the sub-blossoms.
    std::vector<int> bestedgeto(2 * nvertex_, -1);
    for (int child : path) {
      std::vector<std::vector<int>> nblists;
      if (!has_blossombestedges_[child]) {
        scratch_leaves_.clear();
        blossom_leaves(child, scratch_leaves_);
        for (int leaf : scratch_leaves_) {
          std::vector<int> ks;
          ks.reserve(neighbend_[leaf].size());
          for (int p : neighbend_[leaf]) ks.push_back(p / 2);
          nblists.push_back(std::move(ks));
        }
      } else {
        nblists.push_back(blossombestedges_[child]);
      }
      for (const auto& nblist : nblists) {
        for (int ek : nblist) {
          int i = edges_[ek].u;
          int j = edges_[ek].v;
          if (inblossom_[j] == b) std::swap(i, j);
          const int bj = inblossom_[j];
          if (bj != b && label_[bj] == 1 &&
              (bestedgeto[bj] == -1 || slack(ek) < slack(bestedgeto[bj]))) {
            bestedgeto[bj] = ek;
          }
        }
      }
      blossombestedges_[child].clear();
      has_blossombestedges_[child] = false;
      bestedge_[child] = -1;
    }
    blossombestedges_[b].clear();
    for (int ek : bestedgeto) {
      if (ek != -1) blossombestedges_[b].push_back(ek);
    }
    has_blossombestedges_[b] = true;
    bestedge_[b] = -1;
    for (int ek : blossombestedges_[b]) {
      if (bestedge_[b] == -1 || slack(ek) < slack(bestedge_[b])) {
        bestedge_[b] = ek;
      }
    }
  }

  void expand_blossom(int b, bool endstage) {
    for (int s : blossomchilds_[b]) {
      blossomparent_[s] = -1;
      if (s < nvertex_) {
        inblossom_[s] = s;
      } else if (endstage && dualvar_[s] == 0) {
        expand_blossom(s, endstage);
      } else {
        scratch_leaves_.clear();
        blossom_leaves(s, scratch_leaves_);
        for (int leaf : scratch_leaves_) inblossom_[leaf] = s;
      }
    }

    if (!endstage && label_[b] == 2) {
      assert(labelend_[b] >= 0);
      const int entrychild = inblossom_[endpoint_[labelend_[b] ^ 1]];
      const int nchilds = static_cast<int>(blossomchilds_[b].size());
      int j = 0;
      for (; j < nchilds; ++j) {
        if (blossomchilds_[b][j] == entrychild) break;
      }
      int jstep, endptrick;
      if (j & 1) {
        j -= nchilds;
        jstep = 1;
        endptrick = 0;
      } else {
        jstep = -1;
        endptrick = 1;
      }
      const auto child_at = [&](int idx) {
        return blossomchilds_[b][(idx % nchilds + nchilds) % nchilds];
      };
      const auto endp_at = [&](int idx) {
        return blossomendps_[b][(idx % nchilds + nchilds) % nchilds];
      };
      int p = labelend_[b];
      while (j != 0) {
        label_[endpoint_[p ^ 1]] = 0;
        label_[endpoint_[endp_at(j - endptrick) ^ endptrick ^ 1]] = 0;
        assign_label(endpoint_[p ^ 1], 2, p);
        allowedge_[endp_at(j - endptrick) / 2] = true;
        j += jstep;
        p = endp_at(j - endptrick) ^ endptrick;
        allowedge_[p / 2] = true;
        j += jstep;
      }
      const int bv = child_at(j);
      label_[endpoint_[p ^ 1]] = label_[bv] = 2;
      labelend_[endpoint_[p ^ 1]] = labelend_[bv] = p;
      bestedge_[bv] = -1;
      j += jstep;
      while (child_at(j) != entrychild) {
        const int bw = child_at(j);
        if (label_[bw] == 1) {
          j += jstep;
          continue;
        }
        scratch_leaves_.clear();
        blossom_leaves(bw, scratch_leaves_);
        int reached = -1;
        for (int leaf : scratch_leaves_) {
          if (label_[leaf] != 0) {
            reached = leaf;
            break;
          }
        }
        if (reached >= 0) {
          assert(label_[reached] == 2);
          assert(inblossom_[reached] == bw);
          label_[reached] = 0;
          label_[endpoint_[mate_[blossombase_[bw]]]] = 0;
          assign_label(reached, 2, labelend_[reached]);
        }
        j += jstep;
      }
    }

    label_[b] = labelend_[b] = -1;
    blossomchilds_[b].clear();
    blossomendps_[b].clear();
    blossombase_[b] = -1;
    blossombestedges_[b].clear();
    has_blossombestedges_[b] = false;
    bestedge_[b] = -1;
    unusedblossoms_.push_back(b);
  }

  // Swap matched/unmatched edges over the alternating path through blossom b
  // between vertex v and the base vertex.
  void augment_blossom(int b, int v) {
    int t = v;
    while (blossomparent_[t] != b) t = blossomparent_[t];
    if (t >= nvertex_) augment_blossom(t, v);

    const int nchilds = static_cast<int>(blossomchilds_[b].size());
    int i = 0;
    for (; i < nchilds; ++i) {
      if (blossomchilds_[b][i] == t) break;
    }
    int j = i;
    int jstep, endptrick;
    if (i & 1) {
      j -= nchilds;
      jstep = 1;
      endptrick = 0;
    } else {
      jstep = -1;
      endptrick = 1;
    }
    const auto child_at = [&](int idx) {
      return blossomchilds_[b][(idx % nchilds + nchilds) % nchilds];
    };
    const auto endp_at = [&](int idx) {
      return blossomendps_[b][(idx % nchilds + nchilds) % nchilds];
    };
    while (j != 0) {
      j += jstep;
      t = child_at(j);
      const int p = endp_at(j - endptrick) ^ endptrick;
      if (t >= nvertex_) augment_blossom(t, endpoint_[p]);
      j += jstep;
      t = child_at(j);
      if (t >= nvertex_) augment_blossom(t, endpoint_[p ^ 1]);
      mate_[endpoint_[p]] = p ^ 1;
      mate_[endpoint_[p ^ 1]] = p;
    }

    std::rotate(blossomchilds_[b].begin(), blossomchilds_[b].begin() + i,
                blossomchilds_[b].end());
    std::rotate(blossomendps_[b].begin(), blossomendps_[b].begin() + i,
                blossomendps_[b].end());
    blossombase_[b] = blossombase_[blossomchilds_[b][0]];
    assert(blossombase_[b] == v);
  }

  // Swap matched/unmatched edges over the augmenting path through edge k.
  void augment_matching(int k) {
    for (const auto& [start, start_p] :
         {std::pair{edges_[k].u, 2 * k + 1}, std::pair{edges_[k].v, 2 * k}}) {
      int s = start;
      int p = start_p;
      while (true) {
        const int bs = inblossom_[s];
        assert(label_[bs] == 1);
        assert(labelend_[bs] == mate_[blossombase_[bs]]);
        if (bs >= nvertex_) augment_blossom(bs, s);
        mate_[s] = p;
        if (labelend_[bs] == -1) break;
        const int t = endpoint_[labelend_[bs]];
        const int bt = inblossom_[t];
        assert(label_[bt] == 2);
        assert(labelend_[bt] >= 0);
        s = endpoint_[labelend_[bt]];
        const int j = endpoint_[labelend_[bt] ^ 1];
        assert(blossombase_[bt] == t);
        if (bt >= nvertex_) augment_blossom(bt, j);
        mate_[j] = labelend_[bt];
        p = labelend_[bt] ^ 1;
      }
    }
  }

  int nvertex_;
  std::vector<WeightedEdge> edges_;
  bool maxcardinality_;
  std::int64_t max_weight_;

  std::vector<int> endpoint_;
  std::vector<std::vector<int>> neighbend_;
  std::vector<int> mate_;
  std::vector<int> label_;
  std::vector<int> labelend_;
  std::vector<int> inblossom_;
  std::vector<int> blossomparent_;
  std::vector<std::vector<int>> blossomchilds_;
  std::vector<int> blossombase_;
  std::vector<std::vector<int>> blossomendps_;
  std::vector<int> bestedge_;
  std::vector<std::vector<int>> blossombestedges_;
  std::vector<char> has_blossombestedges_;
  std::vector<int> unusedblossoms_;
  std::vector<std::int64_t> dualvar_;
  std::vector<char> allowedge_;
  std::vector<int> queue_;
  std::vector<int> scratch_leaves_;
};

}  // namespace

std::vector<int> max_weight_matching(int n_vertices,
                                     const std::vector<WeightedEdge>& edges,
                                     bool max_cardinality) {
  if (n_vertices <= 0 || edges.empty()) {
    return std::vector<int>(std::max(n_vertices, 0), -1);
  }
  return BlossomMatcher(n_vertices, edges, max_cardinality).solve();
}

std::vector<int> min_weight_perfect_matching_general(
    int n_vertices, const std::vector<WeightedEdge>& edges) {
  // Maximum-cardinality matching that maximizes sum of (-w) is a perfect
  // matching of minimum total weight whenever a perfect matching exists.
  std::vector<WeightedEdge> negated = edges;
  for (auto& e : negated) e.weight = -e.weight;
  auto mate = max_weight_matching(n_vertices, negated, true);
  for (int v = 0; v < n_vertices; ++v) {
    if (mate[v] == -1) {
      throw std::invalid_argument("graph admits no perfect matching");
    }
  }
  return mate;
}

}  // namespace rectsurf
