// hdspeech/corpus.h

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

// Manifest records and the speaker-independent, cohort-stratified split.

#ifndef HDSPEECH_CORPUS_H_
#define HDSPEECH_CORPUS_H_

#include <array>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hdspeech {

// Clinical stages in increasing severity.
enum class Cohort { kControl = 0, kPreHd = 1, kProdromal = 2, kManifest = 3 };
inline constexpr std::array<Cohort, 4> kAllCohorts = {
    Cohort::kControl, Cohort::kPreHd, Cohort::kProdromal, Cohort::kManifest};

enum class Task { kSustainedVowel, kDdk, kPrompted, kRead };

std::string_view CohortName(Cohort c);
// Throws UnknownCohort.
Cohort ParseCohort(std::string_view name);
std::string_view TaskName(Task t);
Task ParseTask(std::string_view name);

struct UtteranceRecord {
  std::string utt_id;
  std::string speaker_id;
  Cohort cohort = Cohort::kControl;
  std::string audio_path;
  std::string reference;
  Task task = Task::kRead;
  std::optional<std::string> hypothesis;
};

// One JSONL line per record. Throws ParseError (with line number),
// DuplicateUttId, UnknownCohort.
std::vector<UtteranceRecord> ParseManifest(std::istream &in);
std::vector<UtteranceRecord> LoadManifest(const std::filesystem::path &path);
std::string ManifestLine(const UtteranceRecord &record);
void WriteManifest(const std::filesystem::path &path,
                   std::span<const UtteranceRecord> records);

enum class Split { kTrain = 0, kValid = 1, kTest = 2 };
inline constexpr std::array<double, 3> kSplitFractions = {0.7, 0.1, 0.2};

std::string_view SplitName(Split s);
Split ParseSplit(std::string_view name);

struct SplitAssignment {
  std::map<std::string, Split> speaker_split;
  std::uint64_t seed = 0;
  // Per cohort: speaker counts and fractions in train/valid/test order.
  std::map<Cohort, std::array<int, 3>> counts;
  std::map<Cohort, std::array<double, 3>> achieved_fractions;

  Split Of(const std::string &speaker_id) const;
};

// Largest-remainder split sizes of n speakers at 70/10/20. Cohorts with
// fewer than 3 speakers fill train first, then test, then valid.
std::array<int, 3> SplitSizes(int n);

// Speaker-level stratified assignment; deterministic in (speaker sets per
// cohort, seed). Throws EmptyManifest, ParseError on a speaker listed under
// two cohorts.
SplitAssignment SplitSpeakers(std::span<const UtteranceRecord> records,
                              std::uint64_t seed);

// {speaker_id: "train"|"valid"|"test"} with keys sorted.
std::string SplitToJson(const SplitAssignment &split);
SplitAssignment SplitFromJson(std::string_view json);

}  // namespace hdspeech

#endif  // HDSPEECH_CORPUS_H_
