// hdspeech/synth.h

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

// Deterministic signal and corpus generators with analytically known
// ground truth. Every output is a pure function of its spec.

#ifndef HDSPEECH_SYNTH_H_
#define HDSPEECH_SYNTH_H_

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hdspeech/audio.h"
#include "hdspeech/corpus.h"

namespace hdspeech {

enum class SynthKind {
  kTone,
  kSawtooth,
  kPulseTrainFormant,
  kJitterTone,
  kShimmerTone,
  kNoise,
  kSilence,
  kToyWord,
};

struct Formants {
  double f1_hz = 700.0;
  double f2_hz = 1200.0;
};

struct SynthSpec {
  SynthKind kind = SynthKind::kTone;
  int sample_rate_hz = 16000;
  double duration_s = 1.0;
  double f0_hz = 200.0;
  // Peak amplitude of the periodic component (noise: standard deviation).
  double amplitude = 0.5;
  // Alternating relative period perturbation: periods T0, T0(1+eps), ...
  // Applies to jitter_tone, pulse_train_formant and toy_word.
  double epsilon = 0.0;
  // Alternating cycle amplitudes (shimmer_tone, and pulse excitation when
  // shimmer_low < shimmer_high).
  double shimmer_high = 1.0;
  double shimmer_low = 1.0;
  // pulse_train_formant cycles through these targets, segment_s each.
  std::vector<Formants> formants = {Formants{}};
  double segment_s = 0.0;  // 0: one segment spanning the whole signal
  std::array<double, 2> bandwidths_hz = {80.0, 100.0};
  // Linear chirp end frequency for tone (f0 -> f0_end over the duration).
  std::optional<double> f0_end_hz;
  // Additive white Gaussian noise relative to the periodic signal power.
  std::optional<double> snr_db;
  // toy_word: index into ToyLexicon(); the word's targets are shifted per
  // segment by formant_offsets_hz (cycled), replacing `formants`.
  int word = 0;
  std::vector<std::array<double, 2>> formant_offsets_hz;
  std::uint64_t seed = 1;
};

// Throws InvalidSpec.
AudioBuffer SynthSignal(const SynthSpec &spec);

// Formant targets of the eight toy words 'a'..'h'.
const std::vector<Formants> &ToyLexicon();
char ToyWordChar(int word);

// Generator parameters per cohort stage; monotone in stage.
struct SeverityParams {
  double epsilon = 0.0;
  double shimmer_depth = 0.0;   // shimmer_low = 1 - depth
  double pause_scale = 1.0;     // multiplies inter-word gaps
  double formant_scatter_hz = 0.0;
};
SeverityParams SeverityForCohort(Cohort cohort);

struct CorpusSpec {
  int n_speakers = 130;
  // Speakers per cohort in stage order control, pre_hd, prodromal, manifest.
  // Empty: 36 controls and the rest spread evenly over the three HD stages,
  // scaled to n_speakers.
  std::vector<int> cohort_mix;
  int utterances_per_speaker = 3;
  int sample_rate_hz = 16000;
  std::uint64_t seed = 7;
};

struct SynthUtterance {
  UtteranceRecord record;
  AudioBuffer audio;
};

// In-memory corpus; the first utterance of every speaker is a sustained
// vowel, the rest are read word sequences. Throws InvalidSpec.
std::vector<SynthUtterance> SynthCorpus(const CorpusSpec &spec);

// Writes wav/<utt_id>.wav and manifest.jsonl (paths relative to out_dir).
std::vector<UtteranceRecord> WriteSynthCorpus(const CorpusSpec &spec,
                                              const std::filesystem::path &out_dir);

}  // namespace hdspeech

#endif  // HDSPEECH_SYNTH_H_
