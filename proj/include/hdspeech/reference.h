// hdspeech/reference.h

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

// Single-threaded twins of the OpenMP kernels. They share the per-item
// code with the parallel versions and must produce identical bits; tests
// and the benchmark compare the two.

#ifndef HDSPEECH_REFERENCE_H_
#define HDSPEECH_REFERENCE_H_

#include <span>
#include <vector>

#include "hdspeech/prosody.h"
#include "hdspeech/scoring.h"
#include "hdspeech/trainer.h"

namespace hdspeech::reference {

std::vector<PitchCandidate> AnalyzePitchFramesSerial(const AudioBuffer &audio,
                                                     const FrameSpec &spec,
                                                     const PitchOptions &opts);

std::vector<AlignmentResult> AlignRecordsSerial(std::span<const ScoreRecord> records);

Eigen::MatrixXd LogMelSerial(const AudioBuffer &audio, const ToyEncoderConfig &cfg);

}  // namespace hdspeech::reference

#endif  // HDSPEECH_REFERENCE_H_
