// src/reference/scoring_serial.cc

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

#include "hdspeech/reference.h"

namespace hdspeech::reference {

std::vector<AlignmentResult> AlignRecordsSerial(std::span<const ScoreRecord> records) {
  std::vector<AlignmentResult> out;
  out.reserve(records.size());
  for (const auto &r : records) {
    const auto ref = NormalizeTranscript(r.reference);
    const auto hyp = NormalizeTranscript(r.hypothesis);
    out.push_back(AlignCounts(ref, hyp));
  }
  return out;
}

}  // namespace hdspeech::reference
