// hdspeech/scoring.h

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

// Transcript normalization, word alignment with S/D/I counts, pooled WER
// reports per model and cohort, and cohort delta tables.

#ifndef HDSPEECH_SCORING_H_
#define HDSPEECH_SCORING_H_

#include <cstddef>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hdspeech/corpus.h"

namespace hdspeech {

// Lowercase; anything but letters, digits, apostrophes and whitespace
// becomes a space; apostrophes survive only between two letters. Bytes
// >= 0x80 count as letters so UTF-8 words stay whole.
std::vector<std::string> NormalizeTranscript(std::string_view text);

enum class EditOp { kMatch, kSub, kDel, kIns };

struct AlignedPair {
  EditOp op = EditOp::kMatch;
  std::string ref;  // empty for kIns
  std::string hyp;  // empty for kDel
};

struct AlignmentResult {
  std::size_t n_ref = 0;
  std::size_t subs = 0, dels = 0, ins = 0;
  std::vector<AlignedPair> ops;

  std::size_t errors() const { return subs + dels + ins; }
};

// Unit-cost Levenshtein alignment. Among equal-cost paths the backtrace
// from the end prefers the diagonal (match/sub), then deletion, then
// insertion.
AlignmentResult Align(std::span<const std::string> ref,
                      std::span<const std::string> hyp);
// Counts only; same DP and tie-break as Align, no op list.
AlignmentResult AlignCounts(std::span<const std::string> ref,
                            std::span<const std::string> hyp);

struct ScoreRecord {
  std::string utt_id;
  std::string model;
  Cohort cohort = Cohort::kControl;
  std::string reference;
  std::string hypothesis;
};

struct ScoreReport {
  std::string model;
  std::optional<Cohort> cohort;  // nullopt: all cohorts pooled
  std::size_t n_utts = 0;
  std::size_t n_ref = 0;
  std::size_t subs = 0, dels = 0, ins = 0;
  // Percent of reference words; wer is the sum of the three rates.
  double wer = 0.0, sub_rate = 0.0, del_rate = 0.0, ins_rate = 0.0;
  // Percent of total errors; all zero when there are no errors.
  double sub_share = 0.0, del_share = 0.0, ins_share = 0.0;
};

// Fills rates and shares from pooled counts. Throws EmptyReference.
ScoreReport ReportFromCounts(std::string model, std::optional<Cohort> cohort,
                             std::size_t n_utts, std::size_t n_ref,
                             std::size_t subs, std::size_t dels, std::size_t ins);

// Per-utterance alignment, OpenMP-parallel over records. Result order
// follows the input.
std::vector<AlignmentResult> AlignRecords(std::span<const ScoreRecord> records);

// Pools alignments into one report per model followed by one per
// (model, cohort) present, models sorted by name, cohorts in stage order.
// Throws EmptyReference for a group with no reference words.
std::vector<ScoreReport> Aggregate(std::span<const ScoreRecord> records,
                                   std::span<const AlignmentResult> alignments);

std::vector<ScoreReport> Score(std::span<const ScoreRecord> records);

struct DeltaRow {
  std::string model;
  std::string baseline;
  Cohort cohort = Cohort::kControl;
  double d_wer = 0.0, d_sub = 0.0, d_del = 0.0, d_ins = 0.0;
};

// variant - baseline per cohort, in percentage points, unrounded. Uses the
// per-cohort reports of the two named models. Throws CohortMismatch when
// their cohort sets differ (or a model is absent).
std::vector<DeltaRow> DeltaReport(std::span<const ScoreReport> reports,
                                  const std::string &baseline_model,
                                  const std::string &variant_model);

// "%.2f", with negative zero printed as 0.00.
std::string FormatPercent(double x);
// Signed, "+3.59" / "-0.26"; zero prints as "+0.00".
std::string FormatDelta(double x);

std::string ReportsToCsv(std::span<const ScoreReport> reports);
std::string ReportsToJson(std::span<const ScoreReport> reports);
std::string DeltasToCsv(std::span<const DeltaRow> rows);
std::string DeltasToJson(std::span<const DeltaRow> rows);

struct HypothesisRecord {
  std::string utt_id;
  std::string model;
  std::string hypothesis;
};

// JSONL {utt_id, model, hypothesis}. Throws ParseError with line number
// and DuplicateUttId for a repeated (utt_id, model).
std::vector<HypothesisRecord> ParseHypotheses(std::istream &in);

}  // namespace hdspeech

#endif  // HDSPEECH_SCORING_H_
