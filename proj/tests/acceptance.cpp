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

// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "mtas/commands.hpp"
#include "mtas/features.hpp"
#include "mtas/grouping.hpp"
#include "mtas/metrics.hpp"
#include "mtas/mixsim.hpp"
#include "mtas/sot.hpp"
#include "mtas/wav.hpp"
#include "oracles.hpp"

using namespace mtas;
namespace fs = std::filesystem;
using Tokens = std::vector<std::string>;

namespace {

const fs::path kData = MTAS_TEST_DATA;

struct Outcome {
  bool pass;
  std::string detail;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome cpwer_oracle() {
  std::mt19937 rng(20240601);
  std::uniform_int_distribution<std::size_t> nstreams(0, 5);
  const int instances = 1000;
  int mismatches = 0;
  const auto t0 = std::chrono::steady_clock::now();
  for (int i = 0; i < instances; ++i) {
    std::vector<Tokens> ref(nstreams(rng)), hyp(nstreams(rng));
    for (auto& r : ref) r = oracle::random_tokens(rng, 12, 10);
    for (auto& h : hyp) h = oracle::random_tokens(rng, 12, 10);
    if (cpwer(ref, hyp).counts.errors() != cpwer_bruteforce(ref, hyp).errors()) ++mismatches;
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  char buf[128];
  std::snprintf(buf, sizeof buf, "%d instances, %d mismatches, %.3f s (limit 10 s)", instances,
                mismatches, secs);
  return {mismatches == 0 && secs < 10.0, buf};
}

Outcome edit_distance_oracle() {
  std::mt19937 rng(7);
  const int pairs = 500;
  int mismatches = 0;
  for (int i = 0; i < pairs; ++i) {
    auto a = oracle::random_tokens(rng, 8, 4);
    auto b = oracle::random_tokens(rng, 8, 4);
    if (align(a, b).errors() != oracle::levenshtein(a, b)) ++mismatches;
  }
  return {mismatches == 0,
          std::to_string(pairs) + " pairs, " + std::to_string(mismatches) + " mismatches"};
}

Outcome grouping_oracle() {
  std::mt19937 rng(31337);
  const int sessions = 200;
  int mismatches = 0;
  for (int i = 0; i < sessions; ++i) {
    auto s = oracle::random_session(rng, 50);
    auto groups = build_groups(s);
    // Map each group back to sorted-session indices (segments are unique
    // enough once paired with their position in the sorted list).
    std::vector<std::vector<std::size_t>> mine;
    std::vector<bool> used(s.segments.size(), false);
    for (const auto& g : groups) {
      std::vector<std::size_t> idx;
      for (const auto& seg : g.segments) {
        for (std::size_t k = 0; k < s.segments.size(); ++k) {
          if (!used[k] && s.segments[k] == seg) {
            used[k] = true;
            idx.push_back(k);
            break;
          }
        }
      }
      std::sort(idx.begin(), idx.end());
      mine.push_back(idx);
    }
    if (mine != oracle::components(s.segments, 0.0)) ++mismatches;
  }
  return {mismatches == 0,
          std::to_string(sessions) + " sessions, " + std::to_string(mismatches) + " mismatches"};
}

Outcome sot_round_trip() {
  std::mt19937 rng(555);
  std::uniform_int_distribution<int> nspk(1, 5), nseg(1, 4), start(0, 40), dur(1, 8);
  const int groups = 500;
  int failures = 0, count_checked = 0;
  for (int i = 0; i < groups; ++i) {
    UtteranceGroup g{"g0", "s", {}, 0};
    const int speakers = nspk(rng);
    for (int s = 0; s < speakers; ++s) {
      for (int k = nseg(rng); k > 0; --k) {
        const double a = start(rng) * 0.5;
        g.segments.push_back({"spk" + std::to_string(s), a, a + dur(rng) * 0.5,
                              oracle::random_tokens(rng, 4, 10)});
      }
    }
    std::shuffle(g.segments.begin(), g.segments.end(), rng);
    g.num_speakers = count_speakers(g.segments);

    // Expected streams: per speaker, tokens in (start, end, input) order;
    // speakers by first start then id; empty speakers dropped.
    std::map<std::string, std::vector<std::size_t>> by_speaker;
    for (std::size_t k = 0; k < g.segments.size(); ++k) by_speaker[g.segments[k].speaker_id].push_back(k);
    std::vector<std::pair<std::pair<double, std::string>, Tokens>> expected;
    for (auto& [id, idx] : by_speaker) {
      std::stable_sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) {
        const auto& a = g.segments[x];
        const auto& b = g.segments[y];
        return a.start != b.start ? a.start < b.start : a.end < b.end;
      });
      Tokens concat;
      for (auto k : idx) concat.insert(concat.end(), g.segments[k].tokens.begin(), g.segments[k].tokens.end());
      if (!concat.empty()) expected.push_back({{g.segments[idx.front()].start, id}, concat});
    }
    std::sort(expected.begin(), expected.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    const std::string flat = serialize_group(g).transcript.render();
    auto streams = split_sot(flat, "$");
    bool ok = streams.size() == expected.size();
    for (std::size_t k = 0; ok && k < streams.size(); ++k) ok = streams[k].tokens == expected[k].second;
    if (expected.size() == g.num_speakers) {
      ++count_checked;
      ok = ok && estimate_speaker_count(flat) == g.num_speakers;
    }
    if (!ok) ++failures;
  }
  return {failures == 0, std::to_string(groups) + " groups (" + std::to_string(count_checked) +
                             " with all speakers non-empty), " + std::to_string(failures) +
                             " failures"};
}

Outcome worked_cpwer_example() {
  std::vector<Tokens> ref{{"a", "b", "c", "d"}, {"e", "f"}};
  std::vector<Tokens> hyp{{"a", "b", "c", "d", "e", "f"}};
  auto r = cpwer(ref, hyp);
  const double pct = 100.0 * *r.counts.rate();
  char buf[96];
  std::snprintf(buf, sizeof buf, "%zu errors / %zu words = %.2f%% (expect 4/6 = 66.7 +- 0.05)",
                r.counts.errors(), r.counts.ref_len, pct);
  return {r.counts.errors() == 4 && r.counts.ref_len == 6 && std::abs(pct - 66.7) <= 0.05, buf};
}

Outcome stack_frames_check() {
  auto out = stack_frames(FeatureMatrix::zeros(2, 20), StackConfig{10});
  bool shape = out.dim() == 20 && out.len() == 2;
  std::mt19937 rng(12);
  std::uniform_int_distribution<std::size_t> dim(1, 8), len(1, 50), n(1, 12);
  std::uniform_real_distribution<double> v(-1, 1);
  int bad = 0;
  for (int i = 0; i < 100; ++i) {
    const std::size_t d = dim(rng), l = len(rng), k = n(rng);
    std::vector<double> data(d * l);
    for (auto& x : data) x = v(rng);
    FeatureMatrix h(d, l, data);
    auto s = stack_frames(h, StackConfig{k});
    bool ok = s.len() == (l + k - 1) / k && s.dim() == d * k;
    for (std::size_t t = 0; ok && t < l; ++t) {
      for (std::size_t j = 0; ok && j < d; ++j) ok = s.data()[(t / k) * d * k + (t % k) * d + j] == h.at(t, j);
    }
    for (std::size_t p = d * l; ok && p < s.data().size(); ++p) ok = s.data()[p] == 0.0;
    if (!ok) ++bad;
  }
  return {shape && bad == 0, std::string("2x20 n=10 -> ") + std::to_string(out.dim()) + "x" +
                                 std::to_string(out.len()) + "; 100 random matrices, " +
                                 std::to_string(bad) + " violations"};
}

Outcome mixsim_check() {
  // Determinism through the full simulate command.
  const fs::path dir = fs::temp_directory_path() / ("mtas_accept_" + std::to_string(std::random_device{}()));
  fs::create_directories(dir);
  auto tone = [](std::size_t n, double f) {
    AudioBuffer b;
    for (std::size_t i = 0; i < n; ++i) b.samples.push_back(0.25 * std::sin(f * static_cast<double>(i)));
    return b;
  };
  write_wav(dir / "s1.wav", tone(40000, 0.031));
  write_wav(dir / "s2.wav", tone(36000, 0.047));
  write_wav(dir / "noise.wav", tone(20000, 0.9));
  std::ofstream(dir / "manifest.jsonl")
      << R"({"mixture_id":"mix1","sample_rate":16000,"noise":{"audio_path":"noise.wav","snr_db":0},"sources":[)"
      << R"({"audio_path":"s1.wav","speaker_id":"A","transcript_text":"first talker"},)"
      << R"({"audio_path":"s2.wav","speaker_id":"B","transcript_text":"second talker"}]})" << "\n";
  RunConfig cfg;
  cfg.ref = dir / "manifest.jsonl";
  cfg.seed = 2024;
  std::ostringstream diag;
  cfg.out = dir / "a";
  cmd_simulate(cfg, diag);
  cfg.out = dir / "b";
  cfg.jobs = 4;
  cmd_simulate(cfg, diag);
  const bool identical = slurp(dir / "a" / "mix1.wav") == slurp(dir / "b" / "mix1.wav") &&
                         slurp(dir / "a" / "sessions.jsonl") == slurp(dir / "b" / "sessions.jsonl");
  fs::remove_all(dir);

  // Delay range at sample precision over many mixtures.
  const std::uint32_t rate = 16000;
  int out_of_range = 0;
  for (int m = 0; m < 2000; ++m) {
    auto starts = sample_start_times(2, mixture_seed(2024, "m" + std::to_string(m)), DelayRange{}, rate);
    const long long gap = std::llround(starts[1] * rate);
    if (gap < 16000 || gap >= 24000) ++out_of_range;
  }

  // SNR 0: scaled noise power equals speech-mixture power.
  MixtureSpec spec;
  spec.mixture_id = "snr";
  spec.sources = {{"a", "A", "x"}, {"b", "B", "y"}};
  spec.delays = {0.0, 1.25};
  std::vector<AudioBuffer> src{tone(32000, 0.031), tone(30000, 0.047)};
  AudioBuffer noise = tone(50000, 0.9);
  auto clean = mix(spec, src);
  spec.noise = NoiseSpec{"n", 0.0};
  auto noisy = mix(spec, src, &noise);
  clean.samples.resize(noisy.samples.size(), 0.0);
  std::vector<double> scaled(noisy.samples.size());
  for (std::size_t i = 0; i < scaled.size(); ++i) scaled[i] = noisy.samples[i] - clean.samples[i];
  const double ps = mean_power(clean.samples, scaled.size());
  const double pn = mean_power(scaled, scaled.size());
  const double rel = std::abs(pn - ps) / ps;

  char buf[160];
  std::snprintf(buf, sizeof buf,
                "bit-identical reruns: %s; 2000 delays, %d outside [1.0, 1.5) s; SNR-0 power rel. "
                "error %.2e (limit 1e-6)",
                identical ? "yes" : "no", out_of_range, rel);
  return {identical && out_of_range == 0 && rel < 1e-6, buf};
}

Outcome confusion_check() {
  std::mt19937 rng(4);
  std::uniform_int_distribution<std::size_t> actual(1, 5), est(0, 8), n(1, 500);
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    std::vector<std::pair<std::size_t, std::size_t>> pairs(n(rng));
    for (auto& p : pairs) p = {actual(rng), est(rng)};
    auto cm = confusion(pairs);
    for (const auto& [a, row] : cm.rows) {
      double sum = 0;
      for (std::size_t c = 0; c < cm.num_columns(); ++c) sum += row.percent(c);
      worst = std::max(worst, std::abs(sum - 100.0));
    }
  }
  std::vector<std::pair<std::size_t, std::size_t>> hand{{1, 1}, {1, 1}, {1, 2}, {1, 1}};
  const auto row = confusion(hand).rows.at(1);
  const bool exact = row.percent(1) == 75.0 && row.percent(2) == 25.0 && row.groups == 4;
  char buf[128];
  std::snprintf(buf, sizeof buf, "max |row sum - 100| = %.2e (limit 0.1); hand set row 1 = {1: %.1f, 2: %.1f}",
                worst, row.percent(1), row.percent(2));
  return {worst <= 0.1 && exact, buf};
}

Outcome golden_end_to_end() {
  const fs::path golden = kData / "golden";
  const std::string expected = slurp(golden / "report.json");
  const fs::path dir = fs::temp_directory_path() / ("mtas_golden_" + std::to_string(std::random_device{}()));
  fs::create_directories(dir);
  std::vector<std::string> reports;
  for (std::size_t jobs : {1, 4, 1, 8}) {
    RunConfig cfg;
    cfg.jobs = jobs;
    std::ostringstream diag;
    cfg.ref = golden / "sessions.jsonl";
    {
      std::ofstream out(dir / "groups.jsonl", std::ios::binary);
      cmd_group(cfg, out, diag);
    }
    cfg.ref = dir / "groups.jsonl";
    {
      std::ofstream out(dir / "refs.jsonl", std::ios::binary);
      cmd_sot_gen(cfg, out, diag);
    }
    cfg.ref = dir / "refs.jsonl";
    cfg.hyp = golden / "hyps.jsonl";
    std::ostringstream report;
    cmd_score(cfg, report, diag);
    reports.push_back(report.str());
  }
  fs::remove_all(dir);
  const bool all_match = std::all_of(reports.begin(), reports.end(),
                                     [&](const std::string& r) { return r == expected; });
  return {all_match && !expected.empty(),
          "4 runs (jobs 1, 4, 1, 8) vs checked-in report.json: " +
              std::string(all_match ? "byte-identical" : "DIFFERENT")};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"cpWER oracle equivalence", cpwer_oracle},
      {"edit-distance oracle", edit_distance_oracle},
      {"grouping oracle", grouping_oracle},
      {"SOT round-trip", sot_round_trip},
      {"worked cpWER example", worked_cpwer_example},
      {"stack_frames", stack_frames_check},
      {"mixsim determinism / delay range / SNR", mixsim_check},
      {"confusion matrix", confusion_check},
      {"end-to-end golden report", golden_end_to_end},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << name << ": " << o.detail << '\n';
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
