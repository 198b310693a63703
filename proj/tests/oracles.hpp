// Copyright 2026 The mtas Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Slow, independent reference implementations used only by tests.

#include <algorithm>
#include <cstddef>
#include <queue>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "mtas/core.hpp"

namespace mtas::oracle {

using Tokens = std::vector<std::string>;

/// Plain exponential recursion, no memoization.
inline std::size_t levenshtein(const Tokens& a, std::size_t i, const Tokens& b, std::size_t j) {
  if (i == a.size()) return b.size() - j;
  if (j == b.size()) return a.size() - i;
  std::size_t best = levenshtein(a, i + 1, b, j + 1) + (a[i] == b[j] ? 0 : 1);
  best = std::min(best, levenshtein(a, i + 1, b, j) + 1);
  best = std::min(best, levenshtein(a, i, b, j + 1) + 1);
  return best;
}

inline std::size_t levenshtein(const Tokens& a, const Tokens& b) { return levenshtein(a, 0, b, 0); }

/// Every (S, D, I) triple reachable by some edit script turning ref into hyp.
inline void all_edit_scripts(const Tokens& ref, std::size_t i, const Tokens& hyp, std::size_t j,
                             std::size_t s, std::size_t d, std::size_t n,
                             std::set<std::tuple<std::size_t, std::size_t, std::size_t>>& out) {
  if (i == ref.size() && j == hyp.size()) {
    out.emplace(s, d, n);
    return;
  }
  if (i < ref.size() && j < hyp.size()) {
    const bool same = ref[i] == hyp[j];
    all_edit_scripts(ref, i + 1, hyp, j + 1, s + (same ? 0 : 1), d, n, out);
  }
  if (i < ref.size()) all_edit_scripts(ref, i + 1, hyp, j, s, d + 1, n, out);
  if (j < hyp.size()) all_edit_scripts(ref, i, hyp, j + 1, s, d, n + 1, out);
}

/// Minimum-error (S, D, I) triples over all edit scripts.
inline std::set<std::tuple<std::size_t, std::size_t, std::size_t>> optimal_scripts(
    const Tokens& ref, const Tokens& hyp) {
  std::set<std::tuple<std::size_t, std::size_t, std::size_t>> all, best;
  all_edit_scripts(ref, 0, hyp, 0, 0, 0, 0, all);
  std::size_t lo = SIZE_MAX;
  for (auto [s, d, n] : all) lo = std::min(lo, s + d + n);
  for (auto t : all) {
    auto [s, d, n] = t;
    if (s + d + n == lo) best.insert(t);
  }
  return best;
}

/// Connected components by BFS over the full pairwise overlap matrix, each
/// component as a sorted list of indices, components sorted by first index.
inline std::vector<std::vector<std::size_t>> components(const std::vector<Segment>& segs,
                                                        double min_overlap) {
  const std::size_t n = segs.size();
  std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b || segs[a].speaker_id == segs[b].speaker_id) continue;
      const double lo = std::max(segs[a].start, segs[b].start);
      const double hi = std::min(segs[a].end, segs[b].end);
      adj[a][b] = hi - lo > min_overlap;
    }
  }
  std::vector<bool> seen(n, false);
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t s = 0; s < n; ++s) {
    if (seen[s]) continue;
    std::vector<std::size_t> comp;
    std::queue<std::size_t> q;
    q.push(s);
    seen[s] = true;
    while (!q.empty()) {
      std::size_t v = q.front();
      q.pop();
      comp.push_back(v);
      for (std::size_t w = 0; w < n; ++w) {
        if (adj[v][w] && !seen[w]) {
          seen[w] = true;
          q.push(w);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

inline Tokens random_tokens(std::mt19937& rng, std::size_t max_len, int alphabet) {
  std::uniform_int_distribution<std::size_t> len(0, max_len);
  std::uniform_int_distribution<int> sym(0, alphabet - 1);
  Tokens t(len(rng));
  for (auto& x : t) x = std::string(1, static_cast<char>('a' + sym(rng)));
  return t;
}

/// Random session: up to max_segments segments, speakers drawn from a small
/// pool, times on a coarse grid so ties and touching boundaries happen.
inline Session random_session(std::mt19937& rng, std::size_t max_segments, int speakers = 4) {
  std::uniform_int_distribution<std::size_t> count(0, max_segments);
  std::uniform_int_distribution<int> spk(0, speakers - 1);
  std::uniform_int_distribution<int> start(0, 200);
  std::uniform_int_distribution<int> dur(1, 30);
  Session s;
  s.session_id = "rand";
  const std::size_t n = count(rng);
  for (std::size_t i = 0; i < n; ++i) {
    Segment seg;
    seg.speaker_id = std::string(1, static_cast<char>('A' + spk(rng)));
    seg.start = start(rng) * 0.25;
    seg.end = seg.start + dur(rng) * 0.25;
    seg.tokens = random_tokens(rng, 3, 6);
    s.segments.push_back(std::move(seg));
  }
  sort_segments(s.segments);
  return s;
}

}  // namespace mtas::oracle
