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
#include <string>
#include <string_view>
#include <vector>

#include "mtas/core.hpp"

namespace mtas {

/// Raised on byte sequences that are not valid UTF-8.
class EncodingError : public Error {
 public:
  using Error::Error;
};

struct NormalizationConfig {
  bool lowercase = true;
  bool strip_nonword = true;
  std::string sc_symbol{kDefaultScSymbol};
};

/// NFC, optional lowercasing, non-word stripping (letters, digits and the
/// apostrophe survive), then whitespace tokenization. Throws EncodingError
/// on invalid UTF-8.
std::vector<std::string> normalize_text(std::string_view raw,
                                        const NormalizationConfig& cfg = {});

/// Session JSONL: one object per line with "session_id" and "segments".
/// Segments come back sorted. Throws ParseError naming the line.
std::vector<Session> parse_session_jsonl(std::istream& in, const NormalizationConfig& cfg = {});

/// Inverse of parse_session_jsonl; "text" is the space-joined token list.
void write_session_jsonl(std::ostream& out, const std::vector<Session>& sessions);

/// NIST STM: "file channel speaker begin end [<label>] transcript...".
/// Sessions are keyed by file name in order of first appearance.
std::vector<Session> parse_stm(std::istream& in, const NormalizationConfig& cfg = {});

struct HypothesisRecord {
  std::string session_id;
  std::string group_id;
  std::string sot;

  bool operator==(const HypothesisRecord&) const = default;
};

std::vector<HypothesisRecord> parse_hypothesis_jsonl(std::istream& in);
void write_hypothesis_jsonl(std::ostream& out, const std::vector<HypothesisRecord>& hyps);

}  // namespace mtas
