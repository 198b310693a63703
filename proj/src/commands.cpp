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

#include "mtas/commands.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "mtas/grouping.hpp"
#include "mtas/parallel.hpp"

namespace mtas {

namespace fs = std::filesystem;

NormalizationConfig RunConfig::normalization() const {
  NormalizationConfig cfg;
  cfg.sc_symbol = sc_symbol;
  return cfg;
}

namespace {

std::ifstream open_input(const fs::path& path, const char* what) {
  if (path.empty()) throw Error(std::string("missing --") + what + " path");
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  return in;
}

// Prefixes parse errors with the file they came from.
template <typename Fn>
auto parse_file(const fs::path& path, const char* what, Fn&& fn) {
  auto in = open_input(path, what);
  try {
    return fn(in);
  } catch (const ParseError& e) {
    throw ParseError(e.line(), path.string() + ": " + e.what());
  }
}

}  // namespace

void cmd_group(const RunConfig& cfg, std::ostream& out, std::ostream& /*diag*/) {
  const auto norm = cfg.normalization();
  const bool stm = cfg.ref.extension() == ".stm";
  auto sessions = parse_file(cfg.ref, "ref", [&](std::istream& in) {
    return stm ? parse_stm(in, norm) : parse_session_jsonl(in, norm);
  });
  std::ostringstream problems;
  for (const auto& s : sessions) {
    for (const auto& v : validate_session(s, cfg.sc_symbol)) {
      problems << "\n  " << s.session_id << ": " << v.describe();
    }
  }
  if (!problems.str().empty()) throw Error("invalid sessions:" + problems.str());

  OverlapPolicy policy{cfg.min_overlap};
  std::vector<std::vector<UtteranceGroup>> groups(sessions.size());
  parallel_for(sessions.size(), cfg.jobs,
               [&](std::size_t i) { groups[i] = build_groups(sessions[i], policy); });
  for (const auto& g : groups) write_groups_jsonl(out, g);
}

void cmd_sot_gen(const RunConfig& cfg, std::ostream& out, std::ostream& /*diag*/) {
  const auto groups = parse_file(cfg.ref, "ref", [&](std::istream& in) {
    return parse_groups_jsonl(in, cfg.normalization());
  });
  std::vector<ReferenceRecord> refs(groups.size());
  parallel_for(groups.size(), cfg.jobs,
               [&](std::size_t i) { refs[i] = make_reference(groups[i], cfg.sc_symbol); });
  write_reference_jsonl(out, refs);
}

namespace {

struct ScoringInputs {
  std::vector<ReferenceRecord> refs;
  std::vector<HypothesisRecord> hyps;
};

ScoringInputs load_scoring_inputs(const RunConfig& cfg) {
  ScoringInputs in;
  in.refs = parse_file(cfg.ref, "ref", [&](std::istream& s) {
    return parse_reference_jsonl(s, cfg.normalization());
  });
  in.hyps = parse_file(cfg.hyp, "hyp", [](std::istream& s) { return parse_hypothesis_jsonl(s); });
  return in;
}

}  // namespace

void cmd_score(const RunConfig& cfg, std::ostream& out, std::ostream& diag) {
  const auto in = load_scoring_inputs(cfg);
  ScoreOptions opts;
  opts.norm = cfg.normalization();
  opts.include_sc = cfg.include_sc;
  opts.metric = cfg.metric;
  opts.jobs = cfg.jobs;
  write_report(out, score_corpus(in.refs, in.hyps, opts, diag), cfg.format);
}

void cmd_count_speakers(const RunConfig& cfg, std::ostream& out, std::ostream& diag) {
  const auto in = load_scoring_inputs(cfg);
  write_confusion(out, count_speakers(in.refs, in.hyps, cfg.sc_symbol, diag), cfg.format);
}

namespace {

fs::path resolve_against(const fs::path& base, const std::string& p) {
  fs::path path(p);
  return path.is_absolute() ? path : base / path;
}

bool safe_file_stem(const std::string& id) {
  return !id.empty() && id != "." && id != ".." &&
         id.find_first_of("/\\") == std::string::npos;
}

}  // namespace

void cmd_simulate(const RunConfig& cfg, std::ostream& /*diag*/) {
  if (cfg.out.empty()) throw Error("simulate needs --out <directory>");
  const auto entries = parse_file(cfg.ref, "manifest",
                                  [](std::istream& in) { return parse_mixture_manifest(in); });
  std::set<std::string> ids;
  for (const auto& e : entries) {
    if (!safe_file_stem(e.spec.mixture_id)) {
      throw Error("mixture_id \"" + e.spec.mixture_id + "\" is not usable as a file name");
    }
    if (!ids.insert(e.spec.mixture_id).second) {
      throw Error("duplicate mixture_id \"" + e.spec.mixture_id + "\"");
    }
  }
  const fs::path base = cfg.ref.parent_path();

  std::vector<MixtureSpec> specs(entries.size());
  std::vector<std::vector<std::size_t>> lengths(entries.size());
  std::vector<std::vector<std::uint8_t>> wavs(entries.size());
  parallel_for(entries.size(), cfg.jobs, [&](std::size_t i) {
    MixtureSpec spec = resolve_mixture(entries[i], cfg.seed, cfg.delays);
    std::vector<AudioBuffer> sources;
    for (const auto& src : spec.sources) {
      sources.push_back(read_wav(resolve_against(base, src.audio_path)));
      lengths[i].push_back(sources.back().samples.size());
    }
    std::optional<AudioBuffer> noise;
    if (spec.noise) noise = read_wav(resolve_against(base, spec.noise->audio_path));
    wavs[i] = encode_wav(mix(spec, sources, noise ? &*noise : nullptr));
    specs[i] = std::move(spec);
  });

  const auto manifest = build_manifest(specs, lengths, cfg.normalization());
  fs::create_directories(cfg.out);
  for (std::size_t i = 0; i < specs.size(); ++i) {
    const fs::path wav = cfg.out / (specs[i].mixture_id + ".wav");
    std::ofstream f(wav, std::ios::binary | std::ios::trunc);
    f.write(reinterpret_cast<const char*>(wavs[i].data()),
            static_cast<std::streamsize>(wavs[i].size()));
    if (!f) throw Error("cannot write " + wav.string());
  }
  std::ofstream sessions(cfg.out / "sessions.jsonl", std::ios::binary | std::ios::trunc);
  write_session_jsonl(sessions, manifest.sessions);
  std::ofstream refs(cfg.out / "references.jsonl", std::ios::binary | std::ios::trunc);
  write_reference_jsonl(refs, manifest.references);
  if (!sessions || !refs) throw Error("cannot write manifest files in " + cfg.out.string());
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  if (const char* env = std::getenv("MTAS_SC_TOKEN"); env && *env) cfg.sc_symbol = env;
  std::string metric = "both";
  std::string format = "json";
  std::string ref, hyp, out_path;

  CLI::App app{"Multi-talker SOT corpus processing and scoring"};
  app.require_subcommand(1);
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--sc-token", cfg.sc_symbol, "Speaker-change symbol (env MTAS_SC_TOKEN)")
        ->capture_default_str();
    sub->add_option("--jobs", cfg.jobs, "Worker threads")->capture_default_str()
        ->check(CLI::PositiveNumber);
    sub->add_option("--out", out_path, "Output path (default: stdout)");
  };

  auto* group = app.add_subcommand("group", "Build utterance groups from sessions");
  group->add_option("--ref", ref, "Session JSONL or STM file")->required();
  group->add_option("--min-overlap", cfg.min_overlap, "Minimum overlap in seconds")
      ->capture_default_str()->check(CLI::NonNegativeNumber);
  add_common(group);

  auto* sot_gen = app.add_subcommand("sot-gen", "Serialize groups into SOT references");
  sot_gen->add_option("--ref", ref, "Groups JSONL")->required();
  add_common(sot_gen);

  auto* score = app.add_subcommand("score", "Score SOT hypotheses (WER / cpWER)");
  score->add_option("--ref", ref, "Reference JSONL")->required();
  score->add_option("--hyp", hyp, "Hypothesis JSONL")->required();
  score->add_option("--include-sc", cfg.include_sc, "Score the speaker-change symbol in WER")
      ->capture_default_str();
  score->add_option("--metric", metric, "wer, cpwer or both")->capture_default_str()
      ->check(CLI::IsMember({"wer", "cpwer", "both"}));
  score->add_option("--format", format, "json, csv or md")->capture_default_str()
      ->check(CLI::IsMember({"json", "csv", "md"}));
  add_common(score);

  auto* count = app.add_subcommand("count-speakers", "Talker-count confusion matrix");
  count->add_option("--ref", ref, "Reference JSONL")->required();
  count->add_option("--hyp", hyp, "Hypothesis JSONL")->required();
  count->add_option("--format", format, "json, csv or md")->capture_default_str()
      ->check(CLI::IsMember({"json", "csv", "md"}));
  add_common(count);

  auto* simulate = app.add_subcommand("simulate", "Simulate delayed-overlap mixtures");
  simulate->add_option("--ref,--manifest", ref, "Mixture manifest JSONL")->required();
  simulate->add_option("--seed", cfg.seed, "Global seed")->capture_default_str();
  simulate->add_option("--delay-min", cfg.delays.min, "Minimum inter-source delay (s)")
      ->capture_default_str()->check(CLI::NonNegativeNumber);
  simulate->add_option("--delay-max", cfg.delays.max, "Maximum inter-source delay (s)")
      ->capture_default_str()->check(CLI::NonNegativeNumber);
  add_common(simulate);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (cfg.sc_symbol.empty()) throw Error("--sc-token must be non-empty");
    if (cfg.delays.min > cfg.delays.max) throw Error("--delay-min exceeds --delay-max");
    cfg.metric = parse_metric(metric);
    cfg.format = parse_format(format);
    cfg.ref = fs::absolute(ref);
    if (!hyp.empty()) cfg.hyp = fs::absolute(hyp);
    if (!out_path.empty()) cfg.out = fs::absolute(out_path);
    if (!fs::is_regular_file(cfg.ref)) throw Error("no such file: " + cfg.ref.string());
    if (!cfg.hyp.empty() && !fs::is_regular_file(cfg.hyp)) {
      throw Error("no such file: " + cfg.hyp.string());
    }

    if (simulate->parsed()) {
      cmd_simulate(cfg, err);
      return 0;
    }
    // Buffer the whole output so a failing run leaves no partial file.
    std::ostringstream buf;
    if (group->parsed()) cmd_group(cfg, buf, err);
    if (sot_gen->parsed()) cmd_sot_gen(cfg, buf, err);
    if (score->parsed()) cmd_score(cfg, buf, err);
    if (count->parsed()) cmd_count_speakers(cfg, buf, err);
    if (cfg.out.empty()) {
      out << buf.str();
    } else {
      std::ofstream f(cfg.out, std::ios::binary | std::ios::trunc);
      f << buf.str();
      if (!f) throw Error("cannot write " + cfg.out.string());
    }
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace mtas
