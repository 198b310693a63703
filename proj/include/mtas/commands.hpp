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
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>

#include "mtas/mixsim.hpp"
#include "mtas/report.hpp"

namespace mtas {

/// Settings shared by every subcommand. Paths are resolved up front.
struct RunConfig {
  std::filesystem::path ref;
  std::filesystem::path hyp;
  std::filesystem::path out;
  std::string sc_symbol{kDefaultScSymbol};
  double min_overlap = 0.0;
  bool include_sc = true;
  Metric metric = Metric::kBoth;
  ReportFormat format = ReportFormat::kJson;
  DelayRange delays;
  std::uint64_t seed = 0;
  std::size_t jobs = 1;

  NormalizationConfig normalization() const;
};

// Each command reads its inputs from the paths in cfg, writes its primary
// output to out and warnings to diag, and throws Error on failure.

/// Sessions (JSONL, or STM when the file ends in .stm) -> groups JSONL.
void cmd_group(const RunConfig& cfg, std::ostream& out, std::ostream& diag);
/// Groups JSONL -> reference JSONL.
void cmd_sot_gen(const RunConfig& cfg, std::ostream& out, std::ostream& diag);
/// References + hypotheses -> WER/cpWER report.
void cmd_score(const RunConfig& cfg, std::ostream& out, std::ostream& diag);
/// References + hypotheses -> talker-count confusion matrix.
void cmd_count_speakers(const RunConfig& cfg, std::ostream& out, std::ostream& diag);
/// Mixture manifest (cfg.ref) -> WAVs, sessions.jsonl and references.jsonl in cfg.out.
void cmd_simulate(const RunConfig& cfg, std::ostream& diag);

/// Full command-line entry point. Returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mtas
