// src/corpus.cc

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

#include "hdspeech/corpus.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <set>

#include "hdspeech/error.h"
#include "hdspeech/rng.h"
#include "json.hpp"

namespace hdspeech {

using nlohmann::json;

std::string_view CohortName(Cohort c) {
  switch (c) {
    case Cohort::kControl: return "control";
    case Cohort::kPreHd: return "pre_hd";
    case Cohort::kProdromal: return "prodromal";
    case Cohort::kManifest: return "manifest";
  }
  return "control";
}

Cohort ParseCohort(std::string_view name) {
  for (Cohort c : kAllCohorts)
    if (CohortName(c) == name) return c;
  Fail(ErrorKind::UnknownCohort, "unknown cohort '" + std::string(name) + "'");
}

std::string_view TaskName(Task t) {
  switch (t) {
    case Task::kSustainedVowel: return "sustained_vowel";
    case Task::kDdk: return "ddk";
    case Task::kPrompted: return "prompted";
    case Task::kRead: return "read";
  }
  return "read";
}

Task ParseTask(std::string_view name) {
  for (Task t : {Task::kSustainedVowel, Task::kDdk, Task::kPrompted, Task::kRead})
    if (TaskName(t) == name) return t;
  Fail(ErrorKind::ParseError, "unknown task '" + std::string(name) + "'");
}

std::string_view SplitName(Split s) {
  switch (s) {
    case Split::kTrain: return "train";
    case Split::kValid: return "valid";
    case Split::kTest: return "test";
  }
  return "train";
}

Split ParseSplit(std::string_view name) {
  for (Split s : {Split::kTrain, Split::kValid, Split::kTest})
    if (SplitName(s) == name) return s;
  Fail(ErrorKind::ParseError, "unknown split '" + std::string(name) + "'");
}

namespace {

std::string RequireString(const json &obj, const char *key, std::size_t line) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_string())
    Fail(ErrorKind::ParseError, "line " + std::to_string(line) +
                                    ": missing or non-string field '" + key + "'");
  return it->get<std::string>();
}

}  // namespace

std::vector<UtteranceRecord> ParseManifest(std::istream &in) {
  std::vector<UtteranceRecord> records;
  std::set<std::string> seen;
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (text.find_first_not_of(" \t\r") == std::string::npos) continue;
    json obj;
    try {
      obj = json::parse(text);
    } catch (const json::parse_error &e) {
      Fail(ErrorKind::ParseError, "line " + std::to_string(line) + ": " + e.what());
    }
    if (!obj.is_object())
      Fail(ErrorKind::ParseError, "line " + std::to_string(line) + ": not an object");
    UtteranceRecord r;
    r.utt_id = RequireString(obj, "utt_id", line);
    r.speaker_id = RequireString(obj, "speaker_id", line);
    const std::string cohort = RequireString(obj, "cohort", line);
    try {
      r.cohort = ParseCohort(cohort);
    } catch (const Error &) {
      Fail(ErrorKind::UnknownCohort,
           "line " + std::to_string(line) + ": unknown cohort '" + cohort + "'");
    }
    r.audio_path = RequireString(obj, "audio_path", line);
    r.reference = RequireString(obj, "reference", line);
    if (obj.contains("task")) {
      try {
        r.task = ParseTask(RequireString(obj, "task", line));
      } catch (const Error &e) {
        Fail(ErrorKind::ParseError, "line " + std::to_string(line) + ": " + e.detail());
      }
    }
    if (obj.contains("hypothesis") && !obj["hypothesis"].is_null())
      r.hypothesis = RequireString(obj, "hypothesis", line);
    if (r.utt_id.empty())
      Fail(ErrorKind::ParseError, "line " + std::to_string(line) + ": empty utt_id");
    if (!seen.insert(r.utt_id).second)
      Fail(ErrorKind::DuplicateUttId,
           "line " + std::to_string(line) + ": duplicate utt_id '" + r.utt_id + "'");
    records.push_back(std::move(r));
  }
  return records;
}

std::vector<UtteranceRecord> LoadManifest(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) Fail(ErrorKind::Io, "cannot open manifest " + path.string());
  return ParseManifest(in);
}

std::string ManifestLine(const UtteranceRecord &r) {
  json obj = {{"utt_id", r.utt_id},
              {"speaker_id", r.speaker_id},
              {"cohort", std::string(CohortName(r.cohort))},
              {"audio_path", r.audio_path},
              {"reference", r.reference},
              {"task", std::string(TaskName(r.task))}};
  if (r.hypothesis) obj["hypothesis"] = *r.hypothesis;
  return obj.dump();
}

void WriteManifest(const std::filesystem::path &path,
                   std::span<const UtteranceRecord> records) {
  std::ofstream out(path, std::ios::binary);
  if (!out) Fail(ErrorKind::Io, "cannot write " + path.string());
  for (const auto &r : records) out << ManifestLine(r) << '\n';
}

Split SplitAssignment::Of(const std::string &speaker_id) const {
  auto it = speaker_split.find(speaker_id);
  if (it == speaker_split.end())
    Fail(ErrorKind::ParseError, "speaker '" + speaker_id + "' has no split");
  return it->second;
}

std::array<int, 3> SplitSizes(int n) {
  if (n <= 0) return {0, 0, 0};
  if (n == 1) return {1, 0, 0};
  if (n == 2) return {1, 0, 1};
  std::array<int, 3> sizes{};
  std::array<double, 3> remainder{};
  int assigned = 0;
  for (std::size_t k = 0; k < 3; ++k) {
    const double quota = kSplitFractions[k] * n;
    sizes[k] = static_cast<int>(std::floor(quota + 1e-9));
    remainder[k] = quota - sizes[k];
    assigned += sizes[k];
  }
  std::array<std::size_t, 3> order = {0, 1, 2};
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return remainder[a] > remainder[b] + 1e-12;
  });
  for (std::size_t i = 0; assigned < n; ++i, ++assigned) ++sizes[order[i % 3]];
  return sizes;
}

SplitAssignment SplitSpeakers(std::span<const UtteranceRecord> records,
                              std::uint64_t seed) {
  if (records.empty()) Fail(ErrorKind::EmptyManifest, "no records to split");
  std::map<std::string, Cohort> speaker_cohort;
  for (const auto &r : records) {
    auto [it, inserted] = speaker_cohort.emplace(r.speaker_id, r.cohort);
    if (!inserted && it->second != r.cohort)
      Fail(ErrorKind::ParseError,
           "speaker '" + r.speaker_id + "' appears under two cohorts");
  }
  std::map<Cohort, std::vector<std::string>> by_cohort;
  for (const auto &[speaker, cohort] : speaker_cohort)
    by_cohort[cohort].push_back(speaker);  // map order: sorted ids

  SplitAssignment out;
  out.seed = seed;
  for (auto &[cohort, speakers] : by_cohort) {
    Rng rng(DeriveSeed(seed, static_cast<std::uint64_t>(cohort)));
    rng.Shuffle(speakers.begin(), speakers.end());
    const auto n = static_cast<int>(speakers.size());
    const auto sizes = SplitSizes(n);
    std::size_t i = 0;
    for (std::size_t k = 0; k < 3; ++k)
      for (int c = 0; c < sizes[k]; ++c)
        out.speaker_split[speakers[i++]] = static_cast<Split>(k);
    out.counts[cohort] = sizes;
    out.achieved_fractions[cohort] = {static_cast<double>(sizes[0]) / n,
                                      static_cast<double>(sizes[1]) / n,
                                      static_cast<double>(sizes[2]) / n};
  }
  return out;
}

std::string SplitToJson(const SplitAssignment &split) {
  json obj = json::object();
  for (const auto &[speaker, s] : split.speaker_split)
    obj[speaker] = std::string(SplitName(s));
  return obj.dump(2) + "\n";
}

SplitAssignment SplitFromJson(std::string_view text) {
  json obj;
  try {
    obj = json::parse(text);
  } catch (const json::parse_error &e) {
    Fail(ErrorKind::ParseError, std::string("split file: ") + e.what());
  }
  if (!obj.is_object()) Fail(ErrorKind::ParseError, "split file: not an object");
  SplitAssignment out;
  for (const auto &[speaker, value] : obj.items()) {
    if (!value.is_string())
      Fail(ErrorKind::ParseError, "split file: non-string split for " + speaker);
    out.speaker_split[speaker] = ParseSplit(value.get<std::string>());
  }
  return out;
}

}  // namespace hdspeech
