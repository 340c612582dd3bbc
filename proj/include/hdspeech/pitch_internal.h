// hdspeech/pitch_internal.h

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

// Helpers shared between the parallel pitch kernel and its serial reference.

#ifndef HDSPEECH_PITCH_INTERNAL_H_
#define HDSPEECH_PITCH_INTERNAL_H_

#include <cstddef>
#include <vector>

#include "hdspeech/audio.h"
#include "hdspeech/prosody.h"

namespace hdspeech::internal {

struct LagRange {
  std::size_t min_lag = 0;
  std::size_t max_lag = 0;
};

// Validates the options and clips the lag range to the frame.
LagRange PitchLagRange(int sample_rate_hz, std::size_t frame_length,
                       const PitchOptions &opts);

// Copies audio[start, start+length) into *out with its mean removed.
void RawFrame(const AudioBuffer &audio, std::size_t start, std::size_t length,
              std::vector<double> *out);

}  // namespace hdspeech::internal

#endif  // HDSPEECH_PITCH_INTERNAL_H_
