// hdspeech/prosody.h

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

// Percentile-threshold voice activity, pause/rate measures and the
// autocorrelation pitch tracker.

#ifndef HDSPEECH_PROSODY_H_
#define HDSPEECH_PROSODY_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "hdspeech/audio.h"

namespace hdspeech {

struct VadOptions {
  double percentile = 30.0;
  int smooth_len = 5;
  // Frames whose RMS is within this relative band below the threshold still
  // count as active. 0 gives the bare rms >= threshold rule.
  double tie_tolerance = 0.05;
};

struct VadTrack {
  std::vector<std::uint8_t> v;  // V(t) in {0, 1}
  double hop_ms = 10.0;
  double threshold = 0.0;
  double percentile = 30.0;

  std::size_t size() const { return v.size(); }
};

// Linear-interpolated percentile (0..100) of an unsorted sequence.
double Percentile(std::span<const double> values, double percentile);

// Binary median filter with edge replication; window must be odd.
std::vector<std::uint8_t> MedianSmooth(std::span<const std::uint8_t> v,
                                       int window);

// V(t) = 1 iff rms(t) > 0 and rms(t) >= threshold * (1 - tie_tolerance),
// then median smoothed. Zero-energy frames are always 0.
VadTrack ComputeVad(std::span<const double> rms,
                    const VadOptions &opts = VadOptions());

// 1 - (1/N) sum_t V(t).
double PauseRatio(const VadTrack &vad);

// Number of voiced-segment onsets (a leading 1 counts) per second of audio.
double SpeechRateProxy(const VadTrack &vad, double audio_duration_s);

struct PitchOptions {
  double fmin_hz = 75.0;
  double fmax_hz = 500.0;
  double voicing_threshold = 0.45;
  // Penalty per octave of lag applied when choosing among NCCF peaks.
  double octave_cost = 0.01;
  VadOptions vad;
};

// Best NCCF peak of one frame; lag in samples (fractional), 0 if none.
struct PitchCandidate {
  double lag = 0.0;
  double strength = 0.0;
};

struct PitchTrack {
  std::vector<std::optional<double>> f0_hz;  // nullopt = unvoiced
  std::vector<double> periodicity;           // in [0, 1]
  std::vector<std::uint8_t> vad;
  int sample_rate_hz = 16000;
  std::size_t frame_length = 0;
  std::size_t hop_length = 0;
  double hop_ms = 10.0;

  std::size_t n_frames() const { return f0_hz.size(); }
  std::size_t NumVoiced() const;
  bool voiced(std::size_t i) const { return f0_hz[i].has_value(); }
  double FrameCenterSeconds(std::size_t i) const {
    return (static_cast<double>(i * hop_length) + 0.5 * frame_length) /
           sample_rate_hz;
  }
};

// Normalized cross-correlation of x[0..n-lag) with x[lag..n).
double Nccf(std::span<const double> frame, std::size_t lag);

// Peak search over one raw (unwindowed, mean-removed) frame.
PitchCandidate BestPitchCandidate(std::span<const double> frame,
                                  int sample_rate_hz,
                                  const PitchOptions &opts);

// Per-frame candidate search; OpenMP-parallel over frames. The serial twin
// lives in hdspeech/reference.h.
std::vector<PitchCandidate> AnalyzePitchFrames(const AudioBuffer &audio,
                                               const FrameSpec &spec,
                                               const PitchOptions &opts);

// Throws AudioTooShort, InvalidRange.
PitchTrack TrackF0(const AudioBuffer &audio,
                   const FrameSpec &spec = FrameSpec(),
                   const PitchOptions &opts = PitchOptions());

// Assembles a track from candidates plus the frame VAD; shared by the
// parallel and serial paths.
PitchTrack MakePitchTrack(std::span<const PitchCandidate> candidates,
                          const AudioBuffer &audio, const FrameSpec &spec,
                          const PitchOptions &opts);

// Population standard deviation of voiced f0 (Hz).
double F0Sigma(const PitchTrack &track);

struct ProsodyFeatures {
  double speech_rate_proxy = 0.0;
  double pause_ratio = 0.0;
  double f0_sigma = 0.0;
};

}  // namespace hdspeech

#endif  // HDSPEECH_PROSODY_H_
