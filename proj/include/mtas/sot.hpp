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
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mtas/core.hpp"
#include "mtas/ingest.hpp"

namespace mtas {

struct SpeakerStream {
  std::size_t index = 0;
  std::vector<std::string> tokens;
  std::optional<std::string> speaker_id;

  bool operator==(const SpeakerStream&) const = default;
};

/// Reference-side serialization: the transcript plus the FIFO speaker order
/// and each emitted speaker's concatenated tokens (parallel to speaker_order).
struct SotReference {
  SotTranscript transcript;
  std::vector<std::string> speaker_order;
  std::vector<std::vector<std::string>> per_speaker;

  std::vector<SpeakerStream> streams() const;
};

/// Speaker-wise FIFO serialization. Speakers are ordered by first start
/// (ties by speaker_id), each speaker's segments by (start, end, input
/// order). Speakers without any token are left out.
SotReference serialize_group(const UtteranceGroup& group,
                             std::string_view sc_symbol = kDefaultScSymbol);

/// Splits on sc_symbol first, normalizes each piece, drops empty pieces.
std::vector<SpeakerStream> split_sot(std::string_view flat, std::string_view sc_symbol,
                                     const NormalizationConfig& cfg = {});

/// Number of non-empty pieces between speaker-change symbols.
std::size_t estimate_speaker_count(std::string_view flat,
                                   std::string_view sc_symbol = kDefaultScSymbol);

/// Parses a flat SOT string into items. Unlike split_sot, separators are
/// kept as they occur (including adjacent, leading or trailing ones), so a
/// hypothesis is scored exactly as emitted.
SotTranscript parse_sot(std::string_view flat, std::string_view sc_symbol,
                        const NormalizationConfig& cfg = {});

/// One line of the reference JSONL.
struct ReferenceRecord {
  std::string session_id;
  std::string group_id;
  SotReference reference;

  std::size_t num_speakers() const { return reference.speaker_order.size(); }
};

ReferenceRecord make_reference(const UtteranceGroup& group,
                               std::string_view sc_symbol = kDefaultScSymbol);

void write_reference_jsonl(std::ostream& out, const std::vector<ReferenceRecord>& refs);
std::vector<ReferenceRecord> parse_reference_jsonl(std::istream& in,
                                                   const NormalizationConfig& cfg = {});

}  // namespace mtas
