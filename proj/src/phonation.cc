// src/phonation.cc

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

#include "hdspeech/phonation.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "hdspeech/error.h"
#include "hdspeech/pitch_internal.h"

namespace hdspeech {

namespace {

struct Peak {
  double position = 0.0;  // samples, fractional
  double value = 0.0;
};

// Largest sample in [lo, hi], refined by a parabola through its neighbours.
Peak FindPeak(const std::vector<double> &x, std::size_t lo, std::size_t hi) {
  std::size_t best = lo;
  for (std::size_t i = lo + 1; i <= hi; ++i)
    if (x[i] > x[best]) best = i;
  Peak p{static_cast<double>(best), x[best]};
  if (best > 0 && best + 1 < x.size()) {
    const double y0 = x[best - 1], y1 = x[best], y2 = x[best + 1];
    const double denom = y0 - 2.0 * y1 + y2;
    if (denom < 0.0 && y1 >= y0 && y1 >= y2) {
      const double delta = std::clamp(0.5 * (y0 - y2) / denom, -0.5, 0.5);
      p.position += delta;
      p.value = y1 - 0.25 * (y0 - y2) * delta;
    }
  }
  return p;
}

// Period (in samples) of the voiced frame whose centre is nearest to pos,
// restricted to frames [first, last].
double LocalPeriod(const PitchTrack &pitch, double pos, std::size_t first,
                   std::size_t last) {
  const double centre0 = 0.5 * static_cast<double>(pitch.frame_length);
  const double idx = (pos - centre0) / static_cast<double>(pitch.hop_length);
  const auto f = static_cast<std::size_t>(std::clamp(
      std::lround(idx), static_cast<long>(first), static_cast<long>(last)));
  return pitch.sample_rate_hz / *pitch.f0_hz[f];
}

double PairwiseMeanAbsDiff(const std::vector<double> &values,
                           const std::vector<std::size_t> &run_ids,
                           std::size_t *pairs) {
  double sum = 0.0;
  *pairs = 0;
  for (std::size_t i = 0; i + 1 < values.size(); ++i) {
    if (run_ids[i] != run_ids[i + 1]) continue;
    sum += std::abs(values[i] - values[i + 1]);
    ++*pairs;
  }
  return *pairs ? sum / static_cast<double>(*pairs) : 0.0;
}

double Mean(const std::vector<double> &v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

}  // namespace

PitchPeriodSequence PitchPeriodSequence::FromPeriods(
    std::vector<double> periods_s, std::vector<double> peak_amps) {
  PitchPeriodSequence seq;
  if (peak_amps.empty()) peak_amps.assign(periods_s.size(), 1.0);
  if (peak_amps.size() != periods_s.size())
    Fail(ErrorKind::ShapeMismatch, "periods and amplitudes differ in length");
  seq.run_ids.assign(periods_s.size(), 0);
  seq.periods_s = std::move(periods_s);
  seq.peak_amps = std::move(peak_amps);
  return seq;
}

PitchPeriodSequence ExtractPitchPeriods(const AudioBuffer &audio,
                                        const PitchTrack &pitch,
                                        const CycleMarkOptions &opts) {
  const auto &x = audio.samples;
  PitchPeriodSequence seq;
  std::size_t run_id = 0;
  std::size_t f = 0;
  const std::size_t n_frames = pitch.n_frames();
  while (f < n_frames) {
    if (!pitch.voiced(f)) {
      ++f;
      continue;
    }
    const std::size_t first = f;
    while (f + 1 < n_frames && pitch.voiced(f + 1)) ++f;
    const std::size_t last = f++;

    const std::size_t begin = first * pitch.hop_length;
    const std::size_t end =
        std::min(x.size(), last * pitch.hop_length + pitch.frame_length);
    if (end <= begin + 2) continue;

    std::vector<Peak> marks;
    const double p0 = LocalPeriod(pitch, static_cast<double>(begin), first, last);
    const auto first_hi = std::min(
        end - 1, begin + static_cast<std::size_t>(std::ceil(p0)) - 1);
    marks.push_back(FindPeak(x, begin, first_hi));
    for (;;) {
      const double prev = marks.back().position;
      const double period = LocalPeriod(pitch, prev, first, last);
      const double predicted = prev + period;
      const double half = opts.search_fraction * period;
      const double lo = std::ceil(predicted - half);
      const double hi = std::floor(predicted + half);
      if (hi >= static_cast<double>(end) || lo > hi) break;
      marks.push_back(FindPeak(x, static_cast<std::size_t>(std::max(lo, 0.0)),
                               static_cast<std::size_t>(hi)));
    }
    if (marks.size() < opts.min_cycles + 1) continue;
    for (std::size_t i = 0; i + 1 < marks.size(); ++i) {
      seq.periods_s.push_back((marks[i + 1].position - marks[i].position) /
                              audio.sample_rate_hz);
      seq.peak_amps.push_back(std::abs(marks[i].value));
      seq.run_ids.push_back(run_id);
    }
    ++run_id;
  }
  if (seq.size() == 0)
    Fail(ErrorKind::NoVoicedCycles, "no voiced run long enough for cycle marking");
  return seq;
}

double JitterLocal(const PitchPeriodSequence &seq) {
  if (seq.size() < 2)
    Fail(ErrorKind::InsufficientPeriods,
         std::to_string(seq.size()) + " period(s), need 2");
  std::size_t pairs = 0;
  const double num = PairwiseMeanAbsDiff(seq.periods_s, seq.run_ids, &pairs);
  if (pairs == 0)
    Fail(ErrorKind::InsufficientPeriods, "no adjacent periods within a run");
  return num / Mean(seq.periods_s);
}

double ShimmerLocal(const PitchPeriodSequence &seq) {
  if (seq.size() < 2)
    Fail(ErrorKind::InsufficientPeriods,
         std::to_string(seq.size()) + " period(s), need 2");
  const double mean_amp = Mean(seq.peak_amps);
  if (!(mean_amp > 0.0))
    Fail(ErrorKind::AllZeroAmplitudes, "mean peak amplitude is zero");
  std::size_t pairs = 0;
  const double num = PairwiseMeanAbsDiff(seq.peak_amps, seq.run_ids, &pairs);
  if (pairs == 0)
    Fail(ErrorKind::InsufficientPeriods, "no adjacent periods within a run");
  return num / mean_amp;
}

double HnrDb(const AudioBuffer &audio, const PitchTrack &pitch) {
  double sum = 0.0;
  std::size_t n = 0;
  std::vector<double> frame;
  for (std::size_t f = 0; f < pitch.n_frames(); ++f) {
    if (!pitch.voiced(f)) continue;
    internal::RawFrame(audio, f * pitch.hop_length, pitch.frame_length, &frame);
    const double lag = pitch.sample_rate_hz / *pitch.f0_hz[f];
    const auto centre = static_cast<std::size_t>(std::lround(lag));
    double r = Nccf(frame, centre);
    if (centre >= 1 && centre + 1 < frame.size()) {
      const double y0 = Nccf(frame, centre - 1), y2 = Nccf(frame, centre + 1);
      const double denom = y0 - 2.0 * r + y2;
      if (denom < 0.0 && r >= y0 && r >= y2) {
        const double delta = std::clamp(0.5 * (y0 - y2) / denom, -0.5, 0.5);
        r -= 0.25 * (y0 - y2) * delta;
      }
    }
    r = std::clamp(r, 1e-4, 0.9999);
    sum += 10.0 * std::log10(r / (1.0 - r));
    ++n;
  }
  if (n == 0) Fail(ErrorKind::NoVoicedFrames, "no voiced frames for HNR");
  return sum / static_cast<double>(n);
}

}  // namespace hdspeech
