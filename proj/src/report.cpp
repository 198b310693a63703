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

#include "mtas/report.hpp"

#include <cstdio>
#include <map>
#include <ostream>
#include <utility>

#include "mtas/jsonl.hpp"
#include "mtas/parallel.hpp"

namespace mtas {

Metric parse_metric(std::string_view name) {
  if (name == "wer") return Metric::kWer;
  if (name == "cpwer") return Metric::kCpwer;
  if (name == "both") return Metric::kBoth;
  throw Error("unknown metric \"" + std::string(name) + "\"");
}

ReportFormat parse_format(std::string_view name) {
  if (name == "json") return ReportFormat::kJson;
  if (name == "csv") return ReportFormat::kCsv;
  if (name == "md") return ReportFormat::kMarkdown;
  throw Error("unknown report format \"" + std::string(name) + "\"");
}

GroupScore score_group(const ReferenceRecord& ref, const std::optional<std::string>& hyp_sot,
                       const ScoreOptions& opts) {
  const std::string& sc = opts.norm.sc_symbol;
  const std::string flat = hyp_sot.value_or("");
  GroupScore g;
  g.session_id = ref.session_id;
  g.group_id = ref.group_id;
  g.num_speakers_ref = ref.num_speakers();
  g.hyp_missing = !hyp_sot.has_value();

  const auto hyp_streams = split_sot(flat, sc, opts.norm);
  g.num_speakers_hyp = hyp_streams.size();
  if (opts.metric != Metric::kCpwer) {
    g.wer = sot_wer(ref.reference.transcript, parse_sot(flat, sc, opts.norm), opts.include_sc);
  }
  if (opts.metric != Metric::kWer) {
    std::vector<TokenList> hyp_tokens;
    for (const auto& s : hyp_streams) hyp_tokens.push_back(s.tokens);
    g.cpwer = cpwer(ref.reference.per_speaker, hyp_tokens);
  }
  return g;
}

std::optional<std::string_view> talker_bucket(std::size_t num_speakers) {
  if (num_speakers == 0) return std::nullopt;
  return kAggregateKeys[std::min<std::size_t>(num_speakers, 5)];
}

ScoreReport score_corpus(const std::vector<ReferenceRecord>& refs,
                         const std::vector<HypothesisRecord>& hyps, const ScoreOptions& opts,
                         std::ostream& diag) {
  std::map<std::pair<std::string, std::string>, std::size_t> ref_index;
  for (std::size_t i = 0; i < refs.size(); ++i) {
    ref_index.emplace(std::pair(refs[i].session_id, refs[i].group_id), i);
  }
  std::vector<std::optional<std::string>> hyp_for(refs.size());
  for (const auto& h : hyps) {
    auto it = ref_index.find({h.session_id, h.group_id});
    if (it == ref_index.end()) {
      throw Error("hypothesis for unknown group " + h.session_id + "/" + h.group_id);
    }
    if (hyp_for[it->second]) {
      throw Error("duplicate hypothesis for group " + h.session_id + "/" + h.group_id);
    }
    hyp_for[it->second] = h.sot;
  }
  for (std::size_t i = 0; i < refs.size(); ++i) {
    if (!hyp_for[i]) {
      diag << "warning: no hypothesis for " << refs[i].session_id << "/" << refs[i].group_id
           << "; scored as deletions\n";
    }
  }

  ScoreReport report;
  report.metric = opts.metric;
  report.groups.resize(refs.size());
  parallel_for(refs.size(), opts.jobs,
               [&](std::size_t i) { report.groups[i] = score_group(refs[i], hyp_for[i], opts); });

  for (const auto& g : report.groups) {
    auto pool = [&](Aggregate& a) {
      ++a.groups;
      a.wer += g.wer;
      a.cpwer += g.cpwer.counts;
    };
    pool(report.aggregates[0]);
    if (auto key = talker_bucket(g.num_speakers_ref)) {
      const auto pos = std::find(kAggregateKeys.begin(), kAggregateKeys.end(), *key);
      pool(report.aggregates[static_cast<std::size_t>(pos - kAggregateKeys.begin())]);
    }
  }
  // Groups with no reference words stay in the pools but are not listed.
  std::erase_if(report.groups, [](const GroupScore& g) { return g.num_speakers_ref == 0; });
  return report;
}

namespace {

using jsonl::OrderedJson;

bool wants_wer(Metric m) { return m != Metric::kCpwer; }
bool wants_cpwer(Metric m) { return m != Metric::kWer; }

OrderedJson counts_json(const AlignmentCounts& c) {
  OrderedJson j;
  j["S"] = c.substitutions;
  j["D"] = c.deletions;
  j["I"] = c.insertions;
  j["ref_len"] = c.ref_len;
  if (auto r = c.rate()) {
    j["rate"] = *r;
  } else {
    j["rate"] = nullptr;
  }
  return j;
}

std::string percent(const AlignmentCounts& c) {
  auto r = c.rate();
  if (!r) return "-";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", 100.0 * *r);
  return buf;
}

std::string fixed(double v, int digits) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string rate_field(const AlignmentCounts& c) {
  auto r = c.rate();
  return r ? fixed(*r, 6) : "";
}

std::string assignment_text(const CpwerResult& r, char sep) {
  std::string out;
  for (std::size_t i = 0; i < r.assignment.size(); ++i) {
    if (i) out += sep;
    out += r.assignment[i] ? std::to_string(*r.assignment[i]) : "-";
  }
  return out;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::string md_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '|') out += '\\';
    out += c;
  }
  return out;
}

void write_json_report(std::ostream& out, const ScoreReport& rep) {
  OrderedJson root;
  root["groups"] = OrderedJson::array();
  for (const auto& g : rep.groups) {
    OrderedJson j;
    j["session_id"] = g.session_id;
    j["group_id"] = g.group_id;
    j["num_speakers_ref"] = g.num_speakers_ref;
    j["num_speakers_hyp"] = g.num_speakers_hyp;
    if (wants_wer(rep.metric)) j["wer"] = counts_json(g.wer);
    if (wants_cpwer(rep.metric)) {
      OrderedJson c = counts_json(g.cpwer.counts);
      c["assignment"] = OrderedJson::array();
      for (const auto& a : g.cpwer.assignment) {
        if (a) {
          c["assignment"].push_back(*a);
        } else {
          c["assignment"].push_back(nullptr);
        }
      }
      j["cpwer"] = std::move(c);
    }
    root["groups"].push_back(std::move(j));
  }
  OrderedJson agg;
  for (std::size_t k = 0; k < kAggregateKeys.size(); ++k) {
    const Aggregate& a = rep.aggregates[k];
    OrderedJson j;
    j["groups"] = a.groups;
    if (wants_wer(rep.metric)) j["wer"] = counts_json(a.wer);
    if (wants_cpwer(rep.metric)) j["cpwer"] = counts_json(a.cpwer);
    agg[std::string(kAggregateKeys[k])] = std::move(j);
  }
  root["aggregate"] = std::move(agg);
  out << root.dump(2) << '\n';
}

void write_csv_report(std::ostream& out, const ScoreReport& rep) {
  out << "scope,session_id,group_id,num_speakers_ref,num_speakers_hyp,groups";
  const char* blocks[] = {"wer", "cpwer"};
  const bool enabled[] = {wants_wer(rep.metric), wants_cpwer(rep.metric)};
  for (int b = 0; b < 2; ++b) {
    if (!enabled[b]) continue;
    for (const char* f : {"S", "D", "I", "ref_len", "rate"}) out << ',' << blocks[b] << '_' << f;
  }
  if (enabled[1]) out << ",cpwer_assignment";
  out << '\n';

  auto counts = [&](const AlignmentCounts& c) {
    out << ',' << c.substitutions << ',' << c.deletions << ',' << c.insertions << ','
        << c.ref_len << ',' << rate_field(c);
  };
  for (const auto& g : rep.groups) {
    out << "group," << csv_escape(g.session_id) << ',' << csv_escape(g.group_id) << ','
        << g.num_speakers_ref << ',' << g.num_speakers_hyp << ",1";
    if (enabled[0]) counts(g.wer);
    if (enabled[1]) {
      counts(g.cpwer.counts);
      out << ',' << assignment_text(g.cpwer, ' ');
    }
    out << '\n';
  }
  for (std::size_t k = 0; k < kAggregateKeys.size(); ++k) {
    const Aggregate& a = rep.aggregates[k];
    out << "aggregate,," << kAggregateKeys[k] << ",,," << a.groups;
    if (enabled[0]) counts(a.wer);
    if (enabled[1]) {
      counts(a.cpwer);
      out << ',';
    }
    out << '\n';
  }
}

void write_markdown_report(std::ostream& out, const ScoreReport& rep) {
  out << "| Metric |";
  for (auto key : kAggregateKeys) out << ' ' << key << " |";
  out << "\n|---|";
  for (std::size_t k = 0; k < kAggregateKeys.size(); ++k) out << "---:|";
  out << '\n';
  auto row = [&](const char* label, auto&& cell) {
    out << "| " << label << " |";
    for (const Aggregate& a : rep.aggregates) out << ' ' << cell(a) << " |";
    out << '\n';
  };
  if (wants_wer(rep.metric)) row("WER (%)", [](const Aggregate& a) { return percent(a.wer); });
  if (wants_cpwer(rep.metric)) {
    row("cpWER (%)", [](const Aggregate& a) { return percent(a.cpwer); });
  }
  row("# groups", [](const Aggregate& a) { return std::to_string(a.groups); });

  out << "\n| Session | Group | Ref talkers | Hyp talkers |";
  if (wants_wer(rep.metric)) out << " WER (%) |";
  if (wants_cpwer(rep.metric)) out << " cpWER (%) | Assignment |";
  out << "\n|---|---|---:|---:|";
  if (wants_wer(rep.metric)) out << "---:|";
  if (wants_cpwer(rep.metric)) out << "---:|---|";
  out << '\n';
  for (const auto& g : rep.groups) {
    out << "| " << md_escape(g.session_id) << " | " << md_escape(g.group_id) << " | "
        << g.num_speakers_ref << " | " << g.num_speakers_hyp << " |";
    if (wants_wer(rep.metric)) out << ' ' << percent(g.wer) << " |";
    if (wants_cpwer(rep.metric)) {
      out << ' ' << percent(g.cpwer.counts) << " | " << assignment_text(g.cpwer, ' ') << " |";
    }
    out << '\n';
  }
}

}  // namespace

void write_report(std::ostream& out, const ScoreReport& report, ReportFormat format) {
  switch (format) {
    case ReportFormat::kJson: write_json_report(out, report); break;
    case ReportFormat::kCsv: write_csv_report(out, report); break;
    case ReportFormat::kMarkdown: write_markdown_report(out, report); break;
  }
}

ConfusionMatrix count_speakers(const std::vector<ReferenceRecord>& refs,
                               const std::vector<HypothesisRecord>& hyps,
                               std::string_view sc_symbol, std::ostream& diag, std::size_t cap) {
  std::map<std::pair<std::string, std::string>, const HypothesisRecord*> by_group;
  for (const auto& h : hyps) {
    if (!by_group.emplace(std::pair(h.session_id, h.group_id), &h).second) {
      throw Error("duplicate hypothesis for group " + h.session_id + "/" + h.group_id);
    }
  }
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (const auto& r : refs) {
    auto it = by_group.find({r.session_id, r.group_id});
    std::string flat;
    if (it == by_group.end()) {
      diag << "warning: no hypothesis for " << r.session_id << "/" << r.group_id
           << "; estimated 0 talkers\n";
    } else {
      flat = it->second->sot;
      by_group.erase(it);
    }
    if (r.num_speakers() == 0) {
      diag << "warning: reference " << r.session_id << "/" << r.group_id
           << " has no words; skipped\n";
      continue;
    }
    pairs.emplace_back(r.num_speakers(), estimate_speaker_count(flat, sc_symbol));
  }
  if (!by_group.empty()) {
    const auto& [key, h] = *by_group.begin();
    throw Error("hypothesis for unknown group " + key.first + "/" + key.second);
  }
  return confusion(pairs, cap);
}

void write_confusion(std::ostream& out, const ConfusionMatrix& cm, ReportFormat format) {
  const std::size_t cols = cm.num_columns();
  switch (format) {
    case ReportFormat::kJson: {
      OrderedJson root;
      root["cap"] = cm.cap;
      root["columns"] = OrderedJson::array();
      for (std::size_t c = 0; c < cols; ++c) root["columns"].push_back(cm.column_label(c));
      root["rows"] = OrderedJson::array();
      for (const auto& [actual, row] : cm.rows) {
        OrderedJson j;
        j["actual"] = actual;
        j["groups"] = row.groups;
        j["counts"] = row.counts;
        j["percent"] = OrderedJson::array();
        for (std::size_t c = 0; c < cols; ++c) j["percent"].push_back(row.percent(c));
        root["rows"].push_back(std::move(j));
      }
      out << root.dump(2) << '\n';
      break;
    }
    case ReportFormat::kCsv: {
      out << "actual,groups";
      for (std::size_t c = 0; c < cols; ++c) out << ",est_" << cm.column_label(c);
      out << '\n';
      for (const auto& [actual, row] : cm.rows) {
        out << actual << ',' << row.groups;
        for (std::size_t c = 0; c < cols; ++c) out << ',' << fixed(row.percent(c), 1);
        out << '\n';
      }
      break;
    }
    case ReportFormat::kMarkdown: {
      out << "| Actual # of talkers | # groups |";
      for (std::size_t c = 0; c < cols; ++c) out << ' ' << cm.column_label(c) << " |";
      out << "\n|---:|---:|";
      for (std::size_t c = 0; c < cols; ++c) out << "---:|";
      out << '\n';
      for (const auto& [actual, row] : cm.rows) {
        out << "| " << actual << " | " << row.groups << " |";
        for (std::size_t c = 0; c < cols; ++c) out << ' ' << fixed(row.percent(c), 1) << " |";
        out << '\n';
      }
      break;
    }
  }
}

}  // namespace mtas
