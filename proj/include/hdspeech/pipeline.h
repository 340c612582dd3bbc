// hdspeech/pipeline.h

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

// Batch commands behind the command-line tool. Each writes its outputs and
// "<command>.resolved.cfg" into an output directory.

#ifndef HDSPEECH_PIPELINE_H_
#define HDSPEECH_PIPELINE_H_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "hdspeech/config.h"
#include "hdspeech/corpus.h"
#include "hdspeech/labels.h"

namespace hdspeech {

namespace fs = std::filesystem;

struct ExtractSummary {
  std::size_t n_utterances = 0;
  std::size_t n_complete = 0;
  std::size_t n_failed = 0;  // no feature at all
};

// wav/*.wav + manifest.jsonl.
std::size_t CmdSynth(const PipelineConfig &cfg, const fs::path &out_dir);

// biomarkers.jsonl, one row per utterance sorted by utt_id. Audio paths
// are relative to the manifest's directory. Throws (data error) only when
// every utterance failed.
ExtractSummary CmdExtract(const PipelineConfig &cfg, const fs::path &manifest,
                          const fs::path &out_dir);

// split.json.
SplitAssignment CmdSplit(const PipelineConfig &cfg, const fs::path &manifest,
                         const fs::path &out_dir);

struct BiomarkerRow {
  std::string utt_id;
  std::string speaker_id;
  Cohort cohort = Cohort::kControl;
  BiomarkerVector vector;
  std::vector<std::string> notes;
};

std::string BiomarkerRowToJson(const BiomarkerRow &row);
std::vector<BiomarkerRow> LoadBiomarkers(const fs::path &path);

// labels.jsonl and control_stats.json. Stats come from train-split controls.
std::size_t CmdLabels(const PipelineConfig &cfg, const fs::path &biomarkers,
                      const fs::path &split, const fs::path &out_dir);

struct LabelRow {
  std::string utt_id;
  BiomarkerLabels labels;
};
std::vector<LabelRow> LoadLabels(const fs::path &path);

struct ScoreOptions {
  std::optional<fs::path> hypotheses;  // JSONL {utt_id, model, hypothesis}
  std::optional<fs::path> split;       // score only test-split speakers
  std::string baseline_model;          // empty: no delta report
};

// score.csv / score.json, plus delta.csv / delta.json with a baseline.
// Throws MissingHypothesis listing the uncovered utt_ids.
void CmdScore(const PipelineConfig &cfg, const fs::path &manifest,
              const ScoreOptions &opts, const fs::path &out_dir);

struct TrainToyOptions {
  std::optional<fs::path> labels;  // required when a family is active
  std::optional<fs::path> split;   // train on train split, decode test split
};

struct TrainSummary {
  double initial_asr = 0.0;
  double final_asr = 0.0;
  std::size_t n_train = 0;
  std::size_t n_decoded = 0;
};

// checkpoint.json, loss.csv {step,total,asr,bio} and hypotheses.jsonl with
// greedy decodes of the held-out utterances (model "toy-<family>").
TrainSummary CmdTrainToy(const PipelineConfig &cfg, const fs::path &manifest,
                         const TrainToyOptions &opts, const fs::path &out_dir);

// Writes cfg.Resolved() to out_dir/<command>.resolved.cfg.
void WriteResolvedConfig(const PipelineConfig &cfg, const std::string &command,
                         const fs::path &out_dir);

}  // namespace hdspeech

#endif  // HDSPEECH_PIPELINE_H_
