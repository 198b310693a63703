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
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace mtas {

inline constexpr std::string_view kDefaultScSymbol = "$";

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input that could not be parsed. line() is 1-based, 0 when unknown.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// One speaker's time-stamped utterance. Times are seconds.
struct Segment {
  std::string speaker_id;
  double start = 0.0;
  double end = 0.0;
  std::vector<std::string> tokens;

  bool operator==(const Segment&) const = default;
};

struct Session {
  std::string session_id;
  std::vector<Segment> segments;
  std::optional<std::string> audio_path;

  bool operator==(const Session&) const = default;
};

/// Maximal set of segments connected by cross-speaker overlap.
struct UtteranceGroup {
  std::string group_id;
  std::string session_id;
  std::vector<Segment> segments;
  std::size_t num_speakers = 0;

  bool operator==(const UtteranceGroup&) const = default;
};

struct Word {
  std::string token;
  bool operator==(const Word&) const = default;
};
struct SpeakerChange {
  bool operator==(const SpeakerChange&) const = default;
};
using SotItem = std::variant<Word, SpeakerChange>;

/// Token sequence with speaker-change separators.
struct SotTranscript {
  std::vector<SotItem> items;
  std::string sc_symbol{kDefaultScSymbol};

  /// Items joined by single spaces; separators rendered as sc_symbol.
  std::string render() const;
  /// Flat token list, separators included as sc_symbol when requested.
  std::vector<std::string> tokens(bool include_sc) const;

  bool operator==(const SotTranscript&) const = default;
};

/// Edit counts from one alignment. Additive across disjoint scoring units.
struct AlignmentCounts {
  std::size_t substitutions = 0;
  std::size_t deletions = 0;
  std::size_t insertions = 0;
  std::size_t ref_len = 0;

  std::size_t errors() const { return substitutions + deletions + insertions; }
  /// errors / ref_len; nullopt when the reference is empty.
  std::optional<double> rate() const;

  AlignmentCounts& operator+=(const AlignmentCounts& o) {
    substitutions += o.substitutions;
    deletions += o.deletions;
    insertions += o.insertions;
    ref_len += o.ref_len;
    return *this;
  }
  friend AlignmentCounts operator+(AlignmentCounts a, const AlignmentCounts& b) {
    return a += b;
  }
  bool operator==(const AlignmentCounts&) const = default;
};

struct Violation {
  std::optional<std::size_t> segment_index;  // nullopt: session-level rule
  std::string rule;

  std::string describe() const;
  bool operator==(const Violation&) const = default;
};

/// Checks every Segment and Session invariant. Never throws.
std::vector<Violation> validate_session(const Session& session,
                                        std::string_view sc_symbol = kDefaultScSymbol);

/// Orders segments by (start, end, speaker_id); stable for full ties.
void sort_segments(std::vector<Segment>& segments);

/// Number of distinct speaker ids.
std::size_t count_speakers(const std::vector<Segment>& segments);

std::string join_tokens(const std::vector<std::string>& tokens);

}  // namespace mtas
