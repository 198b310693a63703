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

#include <iosfwd>
#include <vector>

#include "mtas/core.hpp"
#include "mtas/ingest.hpp"

namespace mtas {

struct OverlapPolicy {
  /// Seconds of cross-speaker intersection that must be exceeded.
  double min_overlap = 0.0;
};

/// Different speakers and intersection strictly above policy.min_overlap.
bool overlaps(const Segment& a, const Segment& b, const OverlapPolicy& policy = {});

/// Connected components of the cross-speaker overlap graph. Groups are
/// ordered by earliest start and named "g0", "g1", ...; within a group the
/// session's segment order is kept. Throws Error if min_overlap < 0.
std::vector<UtteranceGroup> build_groups(const Session& session, const OverlapPolicy& policy = {});

/// Groups JSONL: "session_id", "group_id", "num_speakers", "segments".
void write_groups_jsonl(std::ostream& out, const std::vector<UtteranceGroup>& groups);
std::vector<UtteranceGroup> parse_groups_jsonl(std::istream& in, const NormalizationConfig& cfg = {});

}  // namespace mtas
