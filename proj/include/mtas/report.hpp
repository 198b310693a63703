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

#include <array>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mtas/ingest.hpp"
#include "mtas/metrics.hpp"
#include "mtas/sot.hpp"

namespace mtas {

enum class Metric { kWer, kCpwer, kBoth };
enum class ReportFormat { kJson, kCsv, kMarkdown };

Metric parse_metric(std::string_view name);
ReportFormat parse_format(std::string_view name);

struct ScoreOptions {
  NormalizationConfig norm;  // norm.sc_symbol is the separator in use
  bool include_sc = true;
  Metric metric = Metric::kBoth;
  std::size_t jobs = 1;
};

struct GroupScore {
  std::string session_id;
  std::string group_id;
  std::size_t num_speakers_ref = 0;
  std::size_t num_speakers_hyp = 0;
  bool hyp_missing = false;
  AlignmentCounts wer;
  CpwerResult cpwer;
};

/// Scores one reference against a flat SOT hypothesis (nullopt: missing,
/// scored as an empty hypothesis).
GroupScore score_group(const ReferenceRecord& ref, const std::optional<std::string>& hyp_sot,
                       const ScoreOptions& opts);

/// Aggregate keys, in report order. Talker counts of 5 or more share "5+".
inline constexpr std::array<std::string_view, 6> kAggregateKeys = {"avg", "1", "2", "3", "4", "5+"};

/// Bucket key for a reference talker count; nullopt for 0 talkers.
std::optional<std::string_view> talker_bucket(std::size_t num_speakers);

struct Aggregate {
  std::size_t groups = 0;
  AlignmentCounts wer;
  AlignmentCounts cpwer;
};

struct ScoreReport {
  Metric metric = Metric::kBoth;
  std::vector<GroupScore> groups;  // reference file order
  std::array<Aggregate, kAggregateKeys.size()> aggregates;
};

/// Pairs hypotheses with references by (session_id, group_id), scores every
/// reference group and pools counts in reference order. Missing hypotheses
/// are scored as empty and reported on diag; a hypothesis without a
/// reference is an Error.
ScoreReport score_corpus(const std::vector<ReferenceRecord>& refs,
                         const std::vector<HypothesisRecord>& hyps, const ScoreOptions& opts,
                         std::ostream& diag);

void write_report(std::ostream& out, const ScoreReport& report, ReportFormat format);

/// Actual reference talker count against the hypothesis estimate, for every
/// reference with at least one talker.
ConfusionMatrix count_speakers(const std::vector<ReferenceRecord>& refs,
                               const std::vector<HypothesisRecord>& hyps,
                               std::string_view sc_symbol, std::ostream& diag,
                               std::size_t cap = kDefaultCountCap);

void write_confusion(std::ostream& out, const ConfusionMatrix& cm, ReportFormat format);

}  // namespace mtas
