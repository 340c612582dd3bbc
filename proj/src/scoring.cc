// src/scoring.cc

// Copyright 2026  The hdspeech Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "hdspeech/scoring.h"

#include <algorithm>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

#include "hdspeech/error.h"
#include "json.hpp"

namespace hdspeech {

using nlohmann::json;

namespace {

bool IsLetter(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c >= 0x80;
}

bool IsDigit(unsigned char c) { return c >= '0' && c <= '9'; }

bool IsSpace(unsigned char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

// Full (n+1) x (m+1) distance table, row-major.
std::vector<std::size_t> DistanceTable(std::span<const std::string> ref,
                                       std::span<const std::string> hyp) {
  const std::size_t n = ref.size(), m = hyp.size(), w = m + 1;
  std::vector<std::size_t> d((n + 1) * w);
  for (std::size_t j = 0; j <= m; ++j) d[j] = j;
  for (std::size_t i = 1; i <= n; ++i) {
    d[i * w] = i;
    for (std::size_t j = 1; j <= m; ++j) {
      const std::size_t diag = d[(i - 1) * w + j - 1] + (ref[i - 1] == hyp[j - 1] ? 0 : 1);
      const std::size_t del = d[(i - 1) * w + j] + 1;
      const std::size_t ins = d[i * w + j - 1] + 1;
      d[i * w + j] = std::min({diag, del, ins});
    }
  }
  return d;
}

AlignmentResult Backtrace(std::span<const std::string> ref,
                          std::span<const std::string> hyp, bool keep_ops) {
  const auto d = DistanceTable(ref, hyp);
  const std::size_t w = hyp.size() + 1;
  AlignmentResult res;
  res.n_ref = ref.size();
  std::size_t i = ref.size(), j = hyp.size();
  while (i > 0 || j > 0) {
    const std::size_t here = d[i * w + j];
    if (i > 0 && j > 0) {
      const bool same = ref[i - 1] == hyp[j - 1];
      if (here == d[(i - 1) * w + j - 1] + (same ? 0 : 1)) {
        if (!same) ++res.subs;
        if (keep_ops)
          res.ops.push_back({same ? EditOp::kMatch : EditOp::kSub, ref[i - 1], hyp[j - 1]});
        --i;
        --j;
        continue;
      }
    }
    if (i > 0 && here == d[(i - 1) * w + j] + 1) {
      ++res.dels;
      if (keep_ops) res.ops.push_back({EditOp::kDel, ref[i - 1], ""});
      --i;
      continue;
    }
    ++res.ins;
    if (keep_ops) res.ops.push_back({EditOp::kIns, "", hyp[j - 1]});
    --j;
  }
  std::reverse(res.ops.begin(), res.ops.end());
  return res;
}

double Pct(std::size_t num, std::size_t den) {
  return 100.0 * static_cast<double>(num) / static_cast<double>(den);
}

std::string CohortLabel(const std::optional<Cohort> &c) {
  return c ? std::string(CohortName(*c)) : std::string("all");
}

}  // namespace

std::vector<std::string> NormalizeTranscript(std::string_view text) {
  std::string s;
  s.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    // U+2019 RIGHT SINGLE QUOTATION MARK is the common typographic apostrophe.
    if (i + 2 < text.size() && static_cast<unsigned char>(text[i]) == 0xE2 &&
        static_cast<unsigned char>(text[i + 1]) == 0x80 &&
        static_cast<unsigned char>(text[i + 2]) == 0x99) {
      s.push_back('\'');
      i += 2;
      continue;
    }
    const auto c = static_cast<unsigned char>(text[i]);
    if (c >= 'A' && c <= 'Z')
      s.push_back(static_cast<char>(c - 'A' + 'a'));
    else if (IsLetter(c) || IsDigit(c) || c == '\'')
      s.push_back(static_cast<char>(c));
    else
      s.push_back(' ');
  }
  std::string kept = s;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '\'') continue;
    const bool inner = i > 0 && i + 1 < s.size() &&
                       IsLetter(static_cast<unsigned char>(s[i - 1])) &&
                       IsLetter(static_cast<unsigned char>(s[i + 1]));
    if (!inner) kept[i] = ' ';
  }
  std::vector<std::string> tokens;
  std::string cur;
  for (char ch : kept) {
    if (IsSpace(static_cast<unsigned char>(ch))) {
      if (!cur.empty()) tokens.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  if (!cur.empty()) tokens.push_back(std::move(cur));
  return tokens;
}

AlignmentResult Align(std::span<const std::string> ref,
                      std::span<const std::string> hyp) {
  return Backtrace(ref, hyp, true);
}

AlignmentResult AlignCounts(std::span<const std::string> ref,
                            std::span<const std::string> hyp) {
  return Backtrace(ref, hyp, false);
}

ScoreReport ReportFromCounts(std::string model, std::optional<Cohort> cohort,
                             std::size_t n_utts, std::size_t n_ref,
                             std::size_t subs, std::size_t dels, std::size_t ins) {
  if (n_ref == 0)
    Fail(ErrorKind::EmptyReference,
         "model '" + model + "', cohort " + CohortLabel(cohort) +
             ": no reference words");
  ScoreReport r;
  r.model = std::move(model);
  r.cohort = cohort;
  r.n_utts = n_utts;
  r.n_ref = n_ref;
  r.subs = subs;
  r.dels = dels;
  r.ins = ins;
  r.sub_rate = Pct(subs, n_ref);
  r.del_rate = Pct(dels, n_ref);
  r.ins_rate = Pct(ins, n_ref);
  r.wer = r.sub_rate + r.del_rate + r.ins_rate;
  const std::size_t total = subs + dels + ins;
  if (total > 0) {
    r.sub_share = Pct(subs, total);
    r.del_share = Pct(dels, total);
    r.ins_share = Pct(ins, total);
  }
  return r;
}

std::vector<AlignmentResult> AlignRecords(std::span<const ScoreRecord> records) {
  std::vector<AlignmentResult> out(records.size());
  const auto n = static_cast<long>(records.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (long k = 0; k < n; ++k) {
    const auto &r = records[static_cast<std::size_t>(k)];
    const auto ref = NormalizeTranscript(r.reference);
    const auto hyp = NormalizeTranscript(r.hypothesis);
    out[static_cast<std::size_t>(k)] = AlignCounts(ref, hyp);
  }
  return out;
}

std::vector<ScoreReport> Aggregate(std::span<const ScoreRecord> records,
                                   std::span<const AlignmentResult> alignments) {
  if (records.size() != alignments.size())
    Fail(ErrorKind::ShapeMismatch, "records and alignments differ in length");
  struct Acc {
    std::size_t n_utts = 0, n_ref = 0, subs = 0, dels = 0, ins = 0;
    void Add(const AlignmentResult &a) {
      ++n_utts;
      n_ref += a.n_ref;
      subs += a.subs;
      dels += a.dels;
      ins += a.ins;
    }
  };
  // Integer sums, so the result does not depend on record order.
  std::map<std::string, Acc> by_model;
  std::map<std::pair<std::string, Cohort>, Acc> by_cohort;
  for (std::size_t k = 0; k < records.size(); ++k) {
    by_model[records[k].model].Add(alignments[k]);
    by_cohort[{records[k].model, records[k].cohort}].Add(alignments[k]);
  }
  std::vector<ScoreReport> out;
  for (const auto &[model, a] : by_model) {
    out.push_back(ReportFromCounts(model, std::nullopt, a.n_utts, a.n_ref, a.subs,
                                   a.dels, a.ins));
    for (Cohort c : kAllCohorts) {
      auto it = by_cohort.find({model, c});
      if (it == by_cohort.end()) continue;
      const Acc &g = it->second;
      out.push_back(ReportFromCounts(model, c, g.n_utts, g.n_ref, g.subs, g.dels, g.ins));
    }
  }
  return out;
}

std::vector<ScoreReport> Score(std::span<const ScoreRecord> records) {
  const auto alignments = AlignRecords(records);
  return Aggregate(records, alignments);
}

std::vector<DeltaRow> DeltaReport(std::span<const ScoreReport> reports,
                                  const std::string &baseline_model,
                                  const std::string &variant_model) {
  std::map<Cohort, const ScoreReport *> base, var;
  for (const auto &r : reports) {
    if (!r.cohort) continue;
    if (r.model == baseline_model) base[*r.cohort] = &r;
    if (r.model == variant_model) var[*r.cohort] = &r;
  }
  auto keys = [](const std::map<Cohort, const ScoreReport *> &m) {
    std::string s;
    for (const auto &[c, r] : m) s += std::string(CohortName(c)) + " ";
    return s.empty() ? std::string("(none) ") : s;
  };
  if (base.empty() || var.empty() || keys(base) != keys(var))
    Fail(ErrorKind::CohortMismatch,
         "baseline '" + baseline_model + "' cohorts: " + keys(base) + "; variant '" +
             variant_model + "' cohorts: " + keys(var));
  std::vector<DeltaRow> rows;
  for (const auto &[c, b] : base) {
    const ScoreReport *v = var.at(c);
    DeltaRow row;
    row.model = variant_model;
    row.baseline = baseline_model;
    row.cohort = c;
    row.d_wer = v->wer - b->wer;
    row.d_sub = v->sub_rate - b->sub_rate;
    row.d_del = v->del_rate - b->del_rate;
    row.d_ins = v->ins_rate - b->ins_rate;
    rows.push_back(row);
  }
  return rows;
}

std::string FormatPercent(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f", x);
  std::string s(buf);
  if (s == "-0.00") s = "0.00";
  return s;
}

std::string FormatDelta(double x) {
  std::string s = FormatPercent(x);
  if (s[0] != '-') s.insert(s.begin(), '+');
  return s;
}

std::string ReportsToCsv(std::span<const ScoreReport> reports) {
  std::ostringstream os;
  os << "model,cohort,n_utts,n_ref,subs,dels,ins,wer,sub_rate,del_rate,ins_rate,"
        "sub_share,del_share,ins_share\n";
  for (const auto &r : reports)
    os << r.model << ',' << CohortLabel(r.cohort) << ',' << r.n_utts << ',' << r.n_ref
       << ',' << r.subs << ',' << r.dels << ',' << r.ins << ',' << FormatPercent(r.wer)
       << ',' << FormatPercent(r.sub_rate) << ',' << FormatPercent(r.del_rate) << ','
       << FormatPercent(r.ins_rate) << ',' << FormatPercent(r.sub_share) << ','
       << FormatPercent(r.del_share) << ',' << FormatPercent(r.ins_share) << '\n';
  return os.str();
}

std::string ReportsToJson(std::span<const ScoreReport> reports) {
  // Percentages go out as 2-decimal strings so JSON and CSV agree byte-wise.
  json arr = json::array();
  for (const auto &r : reports)
    arr.push_back({{"model", r.model},
                   {"cohort", CohortLabel(r.cohort)},
                   {"n_utts", r.n_utts},
                   {"n_ref", r.n_ref},
                   {"subs", r.subs},
                   {"dels", r.dels},
                   {"ins", r.ins},
                   {"wer", FormatPercent(r.wer)},
                   {"sub_rate", FormatPercent(r.sub_rate)},
                   {"del_rate", FormatPercent(r.del_rate)},
                   {"ins_rate", FormatPercent(r.ins_rate)},
                   {"sub_share", FormatPercent(r.sub_share)},
                   {"del_share", FormatPercent(r.del_share)},
                   {"ins_share", FormatPercent(r.ins_share)}});
  return arr.dump(2) + "\n";
}

std::string DeltasToCsv(std::span<const DeltaRow> rows) {
  std::ostringstream os;
  os << "model,baseline,cohort,d_wer,d_sub,d_del,d_ins\n";
  for (const auto &r : rows)
    os << r.model << ',' << r.baseline << ',' << CohortName(r.cohort) << ','
       << FormatDelta(r.d_wer) << ',' << FormatDelta(r.d_sub) << ','
       << FormatDelta(r.d_del) << ',' << FormatDelta(r.d_ins) << '\n';
  return os.str();
}

std::string DeltasToJson(std::span<const DeltaRow> rows) {
  json arr = json::array();
  for (const auto &r : rows)
    arr.push_back({{"model", r.model},
                   {"baseline", r.baseline},
                   {"cohort", std::string(CohortName(r.cohort))},
                   {"d_wer", FormatDelta(r.d_wer)},
                   {"d_sub", FormatDelta(r.d_sub)},
                   {"d_del", FormatDelta(r.d_del)},
                   {"d_ins", FormatDelta(r.d_ins)}});
  return arr.dump(2) + "\n";
}

std::vector<HypothesisRecord> ParseHypotheses(std::istream &in) {
  std::vector<HypothesisRecord> out;
  std::set<std::pair<std::string, std::string>> seen;
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (text.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string where = "hypotheses line " + std::to_string(line);
    json obj;
    try {
      obj = json::parse(text);
    } catch (const json::parse_error &e) {
      Fail(ErrorKind::ParseError, where + ": " + e.what());
    }
    HypothesisRecord h;
    for (auto [key, dst] : {std::pair<const char *, std::string *>{"utt_id", &h.utt_id},
                            {"model", &h.model},
                            {"hypothesis", &h.hypothesis}}) {
      if (!obj.is_object() || !obj.contains(key) || !obj[key].is_string())
        Fail(ErrorKind::ParseError,
             where + ": missing or non-string field '" + key + "'");
      *dst = obj[key].get<std::string>();
    }
    if (!seen.insert({h.utt_id, h.model}).second)
      Fail(ErrorKind::DuplicateUttId, where + ": duplicate utt_id '" + h.utt_id +
                                          "' for model '" + h.model + "'");
    out.push_back(std::move(h));
  }
  return out;
}

}  // namespace hdspeech
