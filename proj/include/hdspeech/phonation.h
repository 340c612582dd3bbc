// hdspeech/phonation.h

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

// Cycle-level perturbation measures: local jitter, local shimmer and HNR.

#ifndef HDSPEECH_PHONATION_H_
#define HDSPEECH_PHONATION_H_

#include <cstddef>
#include <vector>

#include "hdspeech/audio.h"
#include "hdspeech/prosody.h"

namespace hdspeech {

// Periods T_i and the peak amplitude A_i at the mark that opens each period.
// run_ids tag each period with its voiced run; consecutive-difference sums
// never pair periods from different runs.
struct PitchPeriodSequence {
  std::vector<double> periods_s;
  std::vector<double> peak_amps;
  std::vector<std::size_t> run_ids;

  std::size_t size() const { return periods_s.size(); }
  // Single-run sequence, for callers that already have periods in hand.
  static PitchPeriodSequence FromPeriods(std::vector<double> periods_s,
                                         std::vector<double> peak_amps = {});
};

struct CycleMarkOptions {
  // Search half-width around the predicted next mark, as a fraction of the
  // local period.
  double search_fraction = 0.25;
  // Runs yielding fewer periods than this are discarded.
  std::size_t min_cycles = 3;
};

// Period-guided peak picking inside each maximal voiced run of the track.
// Throws NoVoicedCycles.
PitchPeriodSequence ExtractPitchPeriods(
    const AudioBuffer &audio, const PitchTrack &pitch,
    const CycleMarkOptions &opts = CycleMarkOptions());

// Mean |T_i - T_{i+1}| over same-run pairs divided by mean T_i.
double JitterLocal(const PitchPeriodSequence &seq);

// Amplitude analogue of JitterLocal. Throws AllZeroAmplitudes.
double ShimmerLocal(const PitchPeriodSequence &seq);

// Mean over voiced frames of 10 log10(r / (1 - r)), r being the normalized
// autocorrelation at the frame's pitch lag clamped to [1e-4, 0.9999].
double HnrDb(const AudioBuffer &audio, const PitchTrack &pitch);

struct PhonationFeatures {
  double jitter_local = 0.0;
  double shimmer_local = 0.0;
  double hnr_db = 0.0;
};

}  // namespace hdspeech

#endif  // HDSPEECH_PHONATION_H_
