// src/error.cc

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

namespace hdspeech {

std::string_view ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::UnsupportedFormat: return "UnsupportedFormat";
    case ErrorKind::CorruptFile: return "CorruptFile";
    case ErrorKind::EmptyAudio: return "EmptyAudio";
    case ErrorKind::ResampleRequired: return "ResampleRequired";
    case ErrorKind::AudioTooShort: return "AudioTooShort";
    case ErrorKind::Io: return "Io";
    case ErrorKind::EmptySeries: return "EmptySeries";
    case ErrorKind::NonpositiveDuration: return "NonpositiveDuration";
    case ErrorKind::InvalidRange: return "InvalidRange";
    case ErrorKind::InsufficientVoicedFrames: return "InsufficientVoicedFrames";
    case ErrorKind::NoVoicedCycles: return "NoVoicedCycles";
    case ErrorKind::InsufficientPeriods: return "InsufficientPeriods";
    case ErrorKind::AllZeroAmplitudes: return "AllZeroAmplitudes";
    case ErrorKind::NoVoicedFrames: return "NoVoicedFrames";
    case ErrorKind::LpcUnstable: return "LpcUnstable";
    case ErrorKind::InsufficientFrames: return "InsufficientFrames";
    case ErrorKind::NoControls: return "NoControls";
    case ErrorKind::NormalizationDegenerate: return "NormalizationDegenerate";
    case ErrorKind::MissingFeature: return "MissingFeature";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::DuplicateUttId: return "DuplicateUttId";
    case ErrorKind::UnknownCohort: return "UnknownCohort";
    case ErrorKind::EmptyManifest: return "EmptyManifest";
    case ErrorKind::EmptyReference: return "EmptyReference";
    case ErrorKind::CohortMismatch: return "CohortMismatch";
    case ErrorKind::MissingHypothesis: return "MissingHypothesis";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::InfeasibleTarget: return "InfeasibleTarget";
    case ErrorKind::AllMasked: return "AllMasked";
    case ErrorKind::InvalidSpec: return "InvalidSpec";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
    case ErrorKind::ExtractionFailed: return "ExtractionFailed";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string &detail)
    : std::runtime_error(std::string(ErrorKindName(kind)) + ": " + detail),
      kind_(kind),
      detail_(detail) {}

void Fail(ErrorKind kind, const std::string &detail) {
  throw Error(kind, detail);
}

}  // namespace hdspeech
