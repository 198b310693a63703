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

#include "mtas/metrics.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>

#include "mtas/assignment.hpp"

namespace mtas {

std::vector<AlignedPair> alignment(std::span<const std::string> ref,
                                   std::span<const std::string> hyp) {
  const std::size_t n = ref.size();
  const std::size_t m = hyp.size();
  const std::size_t w = m + 1;
  std::vector<std::size_t> d((n + 1) * w);
  for (std::size_t i = 0; i <= n; ++i) d[i * w] = i;
  for (std::size_t j = 0; j <= m; ++j) d[j] = j;
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      const std::size_t diag = d[(i - 1) * w + j - 1] + (ref[i - 1] == hyp[j - 1] ? 0 : 1);
      d[i * w + j] = std::min({diag, d[(i - 1) * w + j] + 1, d[i * w + j - 1] + 1});
    }
  }

  std::vector<AlignedPair> path;
  path.reserve(n + m);
  std::size_t i = n, j = m;
  while (i > 0 || j > 0) {
    const std::size_t here = d[i * w + j];
    if (i > 0 && j > 0) {
      const bool same = ref[i - 1] == hyp[j - 1];
      if (d[(i - 1) * w + j - 1] + (same ? 0 : 1) == here) {
        path.push_back({same ? EditOp::kMatch : EditOp::kSubstitution, i - 1, j - 1});
        --i;
        --j;
        continue;
      }
    }
    if (i > 0 && d[(i - 1) * w + j] + 1 == here) {
      path.push_back({EditOp::kDeletion, i - 1, std::nullopt});
      --i;
      continue;
    }
    path.push_back({EditOp::kInsertion, std::nullopt, j - 1});
    --j;
  }
  std::reverse(path.begin(), path.end());
  return path;
}

AlignmentCounts align(std::span<const std::string> ref, std::span<const std::string> hyp) {
  AlignmentCounts c;
  c.ref_len = ref.size();
  for (const auto& step : alignment(ref, hyp)) {
    switch (step.op) {
      case EditOp::kMatch: break;
      case EditOp::kSubstitution: ++c.substitutions; break;
      case EditOp::kDeletion: ++c.deletions; break;
      case EditOp::kInsertion: ++c.insertions; break;
    }
  }
  return c;
}

AlignmentCounts sot_wer(const SotTranscript& ref, const SotTranscript& hyp, bool include_sc) {
  if (ref.sc_symbol != hyp.sc_symbol) {
    throw Error("speaker-change symbols differ: \"" + ref.sc_symbol + "\" vs \"" +
                hyp.sc_symbol + "\"");
  }
  return align(ref.tokens(include_sc), hyp.tokens(include_sc));
}

CostMatrix build_cost_matrix(std::span<const TokenList> ref_streams,
                             std::span<const TokenList> hyp_streams) {
  CostMatrix cm;
  cm.num_ref = ref_streams.size();
  cm.num_hyp = hyp_streams.size();
  const std::size_t n = std::max(cm.num_ref, cm.num_hyp);
  const TokenList empty;
  cm.cells.assign(n, std::vector<AlignmentCounts>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const TokenList& r = i < cm.num_ref ? ref_streams[i] : empty;
    for (std::size_t j = 0; j < n; ++j) {
      const TokenList& h = j < cm.num_hyp ? hyp_streams[j] : empty;
      cm.cells[i][j] = align(r, h);
    }
  }
  return cm;
}

CpwerResult cpwer(std::span<const TokenList> ref_streams, std::span<const TokenList> hyp_streams) {
  const CostMatrix cm = build_cost_matrix(ref_streams, hyp_streams);
  const std::size_t n = cm.size();
  std::vector<std::vector<std::int64_t>> cost(n, std::vector<std::int64_t>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      cost[i][j] = static_cast<std::int64_t>(cm.cells[i][j].errors());
    }
  }
  const auto col = solve_assignment(cost);

  CpwerResult result;
  for (std::size_t i = 0; i < n; ++i) result.counts += cm.cells[i][col[i]];
  for (std::size_t i = 0; i < cm.num_ref; ++i) {
    result.assignment.push_back(col[i] < cm.num_hyp ? std::optional(col[i]) : std::nullopt);
  }
  return result;
}

AlignmentCounts cpwer_bruteforce(std::span<const TokenList> ref_streams,
                                 std::span<const TokenList> hyp_streams) {
  const std::size_t n = std::max(ref_streams.size(), hyp_streams.size());
  if (n > kMaxBruteforceStreams) {
    throw Error("cpwer_bruteforce: " + std::to_string(n) + " streams exceeds the limit of " +
                std::to_string(kMaxBruteforceStreams));
  }
  const CostMatrix cm = build_cost_matrix(ref_streams, hyp_streams);
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  AlignmentCounts best;
  bool have = false;
  do {
    AlignmentCounts total;
    for (std::size_t i = 0; i < n; ++i) total += cm.cells[i][perm[i]];
    if (!have || total.errors() < best.errors()) {
      best = total;
      have = true;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

double ConfusionMatrix::Row::percent(std::size_t col) const {
  if (groups == 0) return 0.0;
  return 100.0 * static_cast<double>(counts.at(col)) / static_cast<double>(groups);
}

std::string ConfusionMatrix::column_label(std::size_t col) const {
  return col == cap ? ">=" + std::to_string(cap) : std::to_string(col);
}

ConfusionMatrix confusion(std::span<const std::pair<std::size_t, std::size_t>> groups,
                          std::size_t cap) {
  if (cap == 0) throw Error("confusion: column cap must be >= 1");
  ConfusionMatrix cm;
  cm.cap = cap;
  for (const auto& [actual, estimated] : groups) {
    if (actual == 0) throw Error("confusion: actual talker count must be >= 1");
    auto& row = cm.rows[actual];
    if (row.counts.empty()) row.counts.assign(cm.num_columns(), 0);
    ++row.groups;
    ++row.counts[std::min(estimated, cap)];
  }
  return cm;
}

}  // namespace mtas
