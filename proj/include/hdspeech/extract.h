// hdspeech/extract.h

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

// All seven biomarkers for one recording, with per-feature fault isolation.

#ifndef HDSPEECH_EXTRACT_H_
#define HDSPEECH_EXTRACT_H_

#include <filesystem>
#include <string>
#include <vector>

#include "hdspeech/articulation.h"
#include "hdspeech/audio.h"
#include "hdspeech/labels.h"
#include "hdspeech/phonation.h"
#include "hdspeech/prosody.h"

namespace hdspeech {

struct ExtractOptions {
  FrameSpec frame;
  PitchOptions pitch;
  CycleMarkOptions cycles;
  FormantOptions formants;
};

struct Extraction {
  BiomarkerVector vector;
  // "<feature>: <Kind>: <detail>" for every missing feature, or a single
  // "audio: ..." note when the file itself could not be used.
  std::vector<std::string> notes;
};

// Never throws for data problems; failures become missing features.
Extraction ExtractBiomarkers(const AudioBuffer &audio,
                             const ExtractOptions &opts = ExtractOptions());
Extraction ExtractBiomarkersFromFile(const std::filesystem::path &path,
                                     const ExtractOptions &opts = ExtractOptions());

}  // namespace hdspeech

#endif  // HDSPEECH_EXTRACT_H_
