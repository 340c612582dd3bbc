// hdspeech/error.h

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

#ifndef HDSPEECH_ERROR_H_
#define HDSPEECH_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace hdspeech {

enum class ErrorKind {
  // audio_core
  UnsupportedFormat,
  CorruptFile,
  EmptyAudio,
  ResampleRequired,
  AudioTooShort,
  Io,
  // prosody
  EmptySeries,
  NonpositiveDuration,
  InvalidRange,
  InsufficientVoicedFrames,
  // phonation
  NoVoicedCycles,
  InsufficientPeriods,
  AllZeroAmplitudes,
  NoVoicedFrames,
  // articulation
  LpcUnstable,
  InsufficientFrames,
  // biomarker labels
  NoControls,
  NormalizationDegenerate,
  MissingFeature,
  // corpus
  ParseError,
  DuplicateUttId,
  UnknownCohort,
  EmptyManifest,
  // scoring
  EmptyReference,
  CohortMismatch,
  MissingHypothesis,
  // trainer
  ShapeMismatch,
  InfeasibleTarget,
  AllMasked,
  // synth / config
  InvalidSpec,
  InvalidConfig,
  ExtractionFailed,
};

std::string_view ErrorKindName(ErrorKind kind);

// Every failure the library reports is an Error carrying a machine-readable
// kind; what() is "<Kind>: <detail>".
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string &detail);
  ErrorKind kind() const noexcept { return kind_; }
  const std::string &detail() const noexcept { return detail_; }

 private:
  ErrorKind kind_;
  std::string detail_;
};

[[noreturn]] void Fail(ErrorKind kind, const std::string &detail);

}  // namespace hdspeech

#endif  // HDSPEECH_ERROR_H_
