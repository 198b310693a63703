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

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mtas/core.hpp"

namespace mtas {

using TokenList = std::vector<std::string>;

enum class EditOp { kMatch, kSubstitution, kDeletion, kInsertion };

/// One step of an alignment. Indices are nullopt on the side that has no
/// token (ref for insertions, hyp for deletions).
struct AlignedPair {
  EditOp op;
  std::optional<std::size_t> ref_index;
  std::optional<std::size_t> hyp_index;

  bool operator==(const AlignedPair&) const = default;
};

/// Minimum edit-distance alignment with unit costs. Among optimal
/// alignments the backtrace prefers match/substitution, then deletion,
/// then insertion, so the returned path is deterministic.
std::vector<AlignedPair> alignment(std::span<const std::string> ref,
                                   std::span<const std::string> hyp);

AlignmentCounts align(std::span<const std::string> ref, std::span<const std::string> hyp);

/// Direct WER between two SOT transcripts. With include_sc the separator is
/// scored like any other token. Throws Error if the sc_symbols differ.
AlignmentCounts sot_wer(const SotTranscript& ref, const SotTranscript& hyp,
                        bool include_sc = true);

/// Square matrix of pairwise alignment counts, padded with empty streams.
struct CostMatrix {
  std::size_t num_ref = 0;
  std::size_t num_hyp = 0;
  std::vector<std::vector<AlignmentCounts>> cells;

  std::size_t size() const { return cells.size(); }
};

CostMatrix build_cost_matrix(std::span<const TokenList> ref_streams,
                             std::span<const TokenList> hyp_streams);

struct CpwerResult {
  AlignmentCounts counts;
  /// Hypothesis stream index for each reference stream; nullopt when the
  /// reference was matched to an empty padding stream.
  std::vector<std::optional<std::size_t>> assignment;
};

/// Concatenated minimum-permutation WER via optimal assignment.
CpwerResult cpwer(std::span<const TokenList> ref_streams, std::span<const TokenList> hyp_streams);

inline constexpr std::size_t kMaxBruteforceStreams = 8;

/// Literal enumeration of every permutation. Throws Error when the padded
/// stream count exceeds kMaxBruteforceStreams.
AlignmentCounts cpwer_bruteforce(std::span<const TokenList> ref_streams,
                                 std::span<const TokenList> hyp_streams);

/// Speaker-count confusion. Rows are actual talker counts that occur in the
/// input; columns are estimated counts 0..cap, the last one meaning ">= cap".
struct ConfusionMatrix {
  struct Row {
    std::size_t groups = 0;
    std::vector<std::size_t> counts;

    double percent(std::size_t col) const;
  };

  std::size_t cap = 5;
  std::map<std::size_t, Row> rows;

  std::size_t num_columns() const { return cap + 1; }
  std::string column_label(std::size_t col) const;
};

inline constexpr std::size_t kDefaultCountCap = 5;

/// Throws Error if any actual count is 0 or cap is 0.
ConfusionMatrix confusion(std::span<const std::pair<std::size_t, std::size_t>> groups,
                          std::size_t cap = kDefaultCountCap);

}  // namespace mtas
