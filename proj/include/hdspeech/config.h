// hdspeech/config.h

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

// One declarative key = value file holding every pipeline knob.

#ifndef HDSPEECH_CONFIG_H_
#define HDSPEECH_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "hdspeech/extract.h"
#include "hdspeech/labels.h"
#include "hdspeech/synth.h"
#include "hdspeech/trainer.h"

namespace hdspeech {

struct PipelineConfig {
  // Root of all randomness; split, synth and train seeds derive from it.
  std::uint64_t seed = 7;

  ExtractOptions extract;
  double bin_edge = 0.5;

  // Toy trainer.
  ToyEncoderConfig encoder;
  JointLossConfig loss;
  int train_steps = 300;
  double learning_rate = 1e-2;

  // Synthetic corpus.
  int synth_speakers = 130;
  int synth_utterances_per_speaker = 3;
  int synth_sample_rate_hz = 16000;
  std::vector<int> synth_cohort_mix;  // empty: default mix

  std::string baseline_model;

  std::uint64_t SplitSeed() const;
  std::uint64_t SynthSeed() const;
  std::uint64_t TrainSeed() const;
  CorpusSpec Corpus() const;

  // Lines "key = value"; '#' starts a comment. Unknown keys, malformed
  // values and repeated keys throw InvalidConfig.
  static PipelineConfig Parse(std::string_view text);
  static PipelineConfig Load(const std::filesystem::path &path);
  // Range checks on the parsed values. Throws InvalidConfig.
  void Validate() const;
  // Every key with its effective value, sorted by key; Parse(Resolved())
  // reproduces the config.
  std::string Resolved() const;
  // Applies one "key = value" pair.
  void Set(std::string_view key, std::string_view value);
  static std::vector<std::string> Keys();
};

}  // namespace hdspeech

#endif  // HDSPEECH_CONFIG_H_
