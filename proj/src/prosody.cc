// src/prosody.cc

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

#include "hdspeech/prosody.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "hdspeech/error.h"
#include "hdspeech/pitch_internal.h"

namespace hdspeech {

double Percentile(std::span<const double> values, double percentile) {
  if (values.empty()) Fail(ErrorKind::EmptySeries, "percentile of empty series");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double rank = percentile / 100.0 * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(rank));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = rank - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

std::vector<std::uint8_t> MedianSmooth(std::span<const std::uint8_t> v,
                                       int window) {
  if (window < 1 || window % 2 == 0)
    Fail(ErrorKind::InvalidRange, "median window must be odd and >= 1");
  std::vector<std::uint8_t> out(v.begin(), v.end());
  if (window == 1 || v.empty()) return out;
  const auto n = static_cast<std::ptrdiff_t>(v.size());
  const int half = window / 2;
  for (std::ptrdiff_t t = 0; t < n; ++t) {
    int ones = 0;
    for (std::ptrdiff_t k = t - half; k <= t + half; ++k)
      ones += v[static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(k, 0, n - 1))];
    out[static_cast<std::size_t>(t)] = ones > half ? 1 : 0;
  }
  return out;
}

VadTrack ComputeVad(std::span<const double> rms, const VadOptions &opts) {
  if (rms.empty()) Fail(ErrorKind::EmptySeries, "empty RMS series");
  if (!(opts.percentile > 0.0 && opts.percentile < 100.0))
    Fail(ErrorKind::InvalidRange, "VAD percentile must be in (0, 100)");
  if (opts.tie_tolerance < 0.0 || opts.tie_tolerance >= 1.0)
    Fail(ErrorKind::InvalidRange, "VAD tie tolerance must be in [0, 1)");
  VadTrack track;
  track.percentile = opts.percentile;
  track.threshold = Percentile(rms, opts.percentile);
  const double cut = track.threshold * (1.0 - opts.tie_tolerance);
  std::vector<std::uint8_t> raw(rms.size());
  for (std::size_t t = 0; t < rms.size(); ++t)
    raw[t] = (rms[t] > 0.0 && rms[t] >= cut) ? 1 : 0;
  track.v = MedianSmooth(raw, opts.smooth_len);
  // Smoothing may not switch a zero-energy frame on.
  for (std::size_t t = 0; t < rms.size(); ++t)
    if (rms[t] <= 0.0) track.v[t] = 0;
  return track;
}

double PauseRatio(const VadTrack &vad) {
  if (vad.v.empty()) Fail(ErrorKind::EmptySeries, "empty VAD track");
  std::size_t active = 0;
  for (auto b : vad.v) active += b;
  return 1.0 - static_cast<double>(active) / static_cast<double>(vad.v.size());
}

double SpeechRateProxy(const VadTrack &vad, double audio_duration_s) {
  if (!(audio_duration_s > 0.0))
    Fail(ErrorKind::NonpositiveDuration, "audio duration must be positive");
  std::size_t onsets = 0;
  std::uint8_t prev = 0;
  for (auto b : vad.v) {
    if (b && !prev) ++onsets;
    prev = b;
  }
  return static_cast<double>(onsets) / audio_duration_s;
}

std::size_t PitchTrack::NumVoiced() const {
  return static_cast<std::size_t>(
      std::count_if(f0_hz.begin(), f0_hz.end(),
                    [](const std::optional<double> &f) { return f.has_value(); }));
}

double Nccf(std::span<const double> frame, std::size_t lag) {
  if (lag >= frame.size()) return 0.0;
  const std::size_t m = frame.size() - lag;
  double cross = 0.0, e0 = 0.0, e1 = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double a = frame[i], b = frame[i + lag];
    cross += a * b;
    e0 += a * a;
    e1 += b * b;
  }
  const double denom = std::sqrt(e0 * e1);
  return denom > 0.0 ? cross / denom : 0.0;
}

namespace internal {

LagRange PitchLagRange(int sample_rate_hz, std::size_t frame_length,
                       const PitchOptions &opts) {
  if (!(opts.fmin_hz > 0.0 && opts.fmin_hz < opts.fmax_hz &&
        opts.fmax_hz <= sample_rate_hz / 2.0))
    Fail(ErrorKind::InvalidRange,
         "pitch range requires 0 < fmin < fmax <= sample_rate/2");
  if (!(opts.voicing_threshold > 0.0 && opts.voicing_threshold < 1.0))
    Fail(ErrorKind::InvalidRange, "voicing threshold must be in (0, 1)");
  LagRange r;
  r.min_lag = std::max<std::size_t>(
      2, static_cast<std::size_t>(std::floor(sample_rate_hz / opts.fmax_hz)));
  r.max_lag = static_cast<std::size_t>(std::ceil(sample_rate_hz / opts.fmin_hz));
  if (frame_length < 4 || r.min_lag + 2 >= frame_length)
    Fail(ErrorKind::InvalidRange, "frame too short for the pitch search range");
  r.max_lag = std::min(r.max_lag, frame_length - 2);
  return r;
}

void RawFrame(const AudioBuffer &audio, std::size_t start, std::size_t length,
              std::vector<double> *out) {
  out->assign(audio.samples.begin() + static_cast<std::ptrdiff_t>(start),
              audio.samples.begin() + static_cast<std::ptrdiff_t>(start + length));
  double mean = 0.0;
  for (double x : *out) mean += x;
  mean /= static_cast<double>(length);
  for (double &x : *out) x -= mean;
}

}  // namespace internal

PitchCandidate BestPitchCandidate(std::span<const double> frame,
                                  int sample_rate_hz,
                                  const PitchOptions &opts) {
  const auto range = internal::PitchLagRange(sample_rate_hz, frame.size(), opts);
  const std::size_t lo = range.min_lag - 1, hi = range.max_lag + 1;
  std::vector<double> r(hi - lo + 1);
  for (std::size_t lag = lo; lag <= hi; ++lag) r[lag - lo] = Nccf(frame, lag);

  PitchCandidate best;
  double best_score = -1e300;
  for (std::size_t lag = range.min_lag; lag <= range.max_lag; ++lag) {
    const double prev = r[lag - 1 - lo], cur = r[lag - lo], next = r[lag + 1 - lo];
    if (cur <= 0.0 || cur < prev || cur <= next) continue;
    const double denom = prev - 2.0 * cur + next;
    double delta = 0.0, peak = cur;
    if (denom < 0.0) {
      delta = std::clamp(0.5 * (prev - next) / denom, -0.5, 0.5);
      peak = cur - 0.25 * (prev - next) * delta;
    }
    const double refined = static_cast<double>(lag) + delta;
    const double score =
        peak - opts.octave_cost * std::log2(opts.fmin_hz * refined / sample_rate_hz);
    if (score > best_score) {
      best_score = score;
      best.lag = refined;
      best.strength = std::clamp(peak, 0.0, 1.0);
    }
  }
  return best;
}

std::vector<PitchCandidate> AnalyzePitchFrames(const AudioBuffer &audio,
                                               const FrameSpec &spec,
                                               const PitchOptions &opts) {
  spec.Validate();
  const std::size_t len = spec.FrameLength(audio.sample_rate_hz);
  const std::size_t hop = spec.HopLength(audio.sample_rate_hz);
  const std::size_t n = NumFrames(audio.samples.size(), len, hop);
  if (n == 0) Fail(ErrorKind::AudioTooShort, "audio shorter than one frame");
  internal::PitchLagRange(audio.sample_rate_hz, len, opts);

  std::vector<PitchCandidate> out(n);
  const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel
  {
    std::vector<double> frame;
#pragma omp for schedule(static)
    for (std::ptrdiff_t f = 0; f < count; ++f) {
      internal::RawFrame(audio, static_cast<std::size_t>(f) * hop, len, &frame);
      out[static_cast<std::size_t>(f)] =
          BestPitchCandidate(frame, audio.sample_rate_hz, opts);
    }
  }
  return out;
}

PitchTrack MakePitchTrack(std::span<const PitchCandidate> candidates,
                          const AudioBuffer &audio, const FrameSpec &spec,
                          const PitchOptions &opts) {
  const auto series = FrameSignal(audio, spec);
  const auto rms = FrameRms(series);
  const auto vad = ComputeVad(rms, opts.vad);
  if (candidates.size() != series.n_frames())
    Fail(ErrorKind::ShapeMismatch, "candidate count differs from frame count");

  PitchTrack track;
  track.sample_rate_hz = audio.sample_rate_hz;
  track.frame_length = series.frame_length();
  track.hop_length = series.hop_length();
  track.hop_ms = spec.hop_ms;
  track.vad = vad.v;
  track.f0_hz.resize(candidates.size());
  track.periodicity.resize(candidates.size());
  for (std::size_t f = 0; f < candidates.size(); ++f) {
    const auto &c = candidates[f];
    track.periodicity[f] = c.strength;
    if (c.lag <= 0.0 || !vad.v[f] || c.strength < opts.voicing_threshold) continue;
    const double f0 = audio.sample_rate_hz / c.lag;
    if (f0 < opts.fmin_hz || f0 > opts.fmax_hz) continue;
    track.f0_hz[f] = f0;
  }
  return track;
}

PitchTrack TrackF0(const AudioBuffer &audio, const FrameSpec &spec,
                   const PitchOptions &opts) {
  const auto candidates = AnalyzePitchFrames(audio, spec, opts);
  return MakePitchTrack(candidates, audio, spec, opts);
}

double F0Sigma(const PitchTrack &track) {
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto &f : track.f0_hz)
    if (f) {
      sum += *f;
      ++n;
    }
  if (n < 2)
    Fail(ErrorKind::InsufficientVoicedFrames,
         std::to_string(n) + " voiced frame(s), need 2");
  const double mean = sum / static_cast<double>(n);
  double ss = 0.0;
  for (const auto &f : track.f0_hz)
    if (f) ss += (*f - mean) * (*f - mean);
  return std::sqrt(ss / static_cast<double>(n));
}

}  // namespace hdspeech
