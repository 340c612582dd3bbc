// src/reference/pitch_serial.cc

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

#include "hdspeech/error.h"
#include "hdspeech/pitch_internal.h"
#include "hdspeech/reference.h"

namespace hdspeech::reference {

std::vector<PitchCandidate> AnalyzePitchFramesSerial(const AudioBuffer &audio,
                                                     const FrameSpec &spec,
                                                     const PitchOptions &opts) {
  spec.Validate();
  const std::size_t len = spec.FrameLength(audio.sample_rate_hz);
  const std::size_t hop = spec.HopLength(audio.sample_rate_hz);
  const std::size_t n = NumFrames(audio.samples.size(), len, hop);
  if (n == 0) Fail(ErrorKind::AudioTooShort, "audio shorter than one frame");
  internal::PitchLagRange(audio.sample_rate_hz, len, opts);
  std::vector<PitchCandidate> out(n);
  std::vector<double> frame;
  for (std::size_t f = 0; f < n; ++f) {
    internal::RawFrame(audio, f * hop, len, &frame);
    out[f] = BestPitchCandidate(frame, audio.sample_rate_hz, opts);
  }
  return out;
}

}  // namespace hdspeech::reference
