// src/extract.cc

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

#include "hdspeech/extract.h"

#include <optional>

#include "hdspeech/error.h"

namespace hdspeech {

namespace {

// Runs fn; a library Error becomes a missing feature plus a note.
template <typename Fn>
void Measure(Extraction *out, Feature f, Fn &&fn) {
  try {
    (*out).vector[f] = fn();
  } catch (const Error &e) {
    out->notes.push_back(std::string(FeatureName(f)) + ": " + e.what());
  }
}

void MarkAllMissing(Extraction *out, const std::string &why) {
  for (auto &v : out->vector.values) v.reset();
  out->notes.push_back("audio: " + why);
}

}  // namespace

Extraction ExtractBiomarkers(const AudioBuffer &audio, const ExtractOptions &opts) {
  Extraction out;
  std::optional<VadTrack> vad;
  std::optional<PitchTrack> pitch;
  try {
    const auto frames = FrameSignal(audio, opts.frame);
    vad = ComputeVad(FrameRms(frames), opts.pitch.vad);
    pitch = TrackF0(audio, opts.frame, opts.pitch);
  } catch (const Error &e) {
    MarkAllMissing(&out, e.what());
    return out;
  }

  Measure(&out, Feature::kSpeechRateProxy,
          [&] { return SpeechRateProxy(*vad, audio.DurationSeconds()); });
  Measure(&out, Feature::kPauseRatio, [&] { return PauseRatio(*vad); });
  Measure(&out, Feature::kF0Sigma, [&] { return F0Sigma(*pitch); });

  std::optional<PitchPeriodSequence> periods;
  try {
    periods = ExtractPitchPeriods(audio, *pitch, opts.cycles);
  } catch (const Error &e) {
    out.notes.push_back(std::string("jitter_local: ") + e.what());
    out.notes.push_back(std::string("shimmer_local: ") + e.what());
  }
  if (periods) {
    Measure(&out, Feature::kJitterLocal, [&] { return JitterLocal(*periods); });
    Measure(&out, Feature::kShimmerLocal, [&] { return ShimmerLocal(*periods); });
  }
  Measure(&out, Feature::kHnrDb, [&] { return HnrDb(audio, *pitch); });
  Measure(&out, Feature::kVsaProxy,
          [&] { return VsaProxy(TrackFormants(audio, *pitch, opts.formants)); });
  return out;
}

Extraction ExtractBiomarkersFromFile(const std::filesystem::path &path,
                                     const ExtractOptions &opts) {
  AudioBuffer audio;
  try {
    audio = LoadWav(path);
  } catch (const Error &e) {
    Extraction out;
    MarkAllMissing(&out, e.what());
    return out;
  }
  return ExtractBiomarkers(audio, opts);
}

}  // namespace hdspeech
