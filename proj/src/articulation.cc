// src/articulation.cc

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

#include "hdspeech/articulation.h"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "hdspeech/error.h"

namespace hdspeech {

std::vector<double> Autocorrelation(std::span<const double> x,
                                    std::size_t max_lag) {
  std::vector<double> r(max_lag + 1, 0.0);
  for (std::size_t k = 0; k <= max_lag && k < x.size(); ++k) {
    double acc = 0.0;
    for (std::size_t i = k; i < x.size(); ++i) acc += x[i] * x[i - k];
    r[k] = acc;
  }
  return r;
}

LpcResult LevinsonDurbin(std::span<const double> r, int order) {
  if (order < 1 || r.size() < static_cast<std::size_t>(order) + 1)
    Fail(ErrorKind::ShapeMismatch, "need r[0..order]");
  LpcResult out;
  out.a.assign(static_cast<std::size_t>(order) + 1, 0.0);
  out.a[0] = 1.0;
  double err = r[0];
  if (!(err > 0.0)) {
    out.stable = false;
    return out;
  }
  std::vector<double> prev(out.a.size());
  for (int i = 1; i <= order; ++i) {
    double acc = r[static_cast<std::size_t>(i)];
    for (int j = 1; j < i; ++j)
      acc += out.a[static_cast<std::size_t>(j)] * r[static_cast<std::size_t>(i - j)];
    const double k = -acc / err;
    if (!(std::abs(k) < 1.0)) {
      out.stable = false;
      break;
    }
    prev = out.a;
    for (int j = 1; j < i; ++j)
      out.a[static_cast<std::size_t>(j)] =
          prev[static_cast<std::size_t>(j)] + k * prev[static_cast<std::size_t>(i - j)];
    out.a[static_cast<std::size_t>(i)] = k;
    err *= (1.0 - k * k);
  }
  out.error = err;
  return out;
}

std::vector<std::complex<double>> LpcRoots(std::span<const double> a) {
  const auto p = static_cast<Eigen::Index>(a.size()) - 1;
  if (p < 1) return {};
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(p, p);
  for (Eigen::Index j = 0; j < p; ++j)
    companion(0, j) = -a[static_cast<std::size_t>(j + 1)] / a[0];
  for (Eigen::Index i = 1; i < p; ++i) companion(i, i - 1) = 1.0;
  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
  std::vector<std::complex<double>> roots(static_cast<std::size_t>(p));
  for (Eigen::Index i = 0; i < p; ++i)
    roots[static_cast<std::size_t>(i)] = solver.eigenvalues()(i);
  return roots;
}

int ResolveLpcOrder(const FormantOptions &opts, int sample_rate_hz) {
  if (opts.lpc_order > 0) return opts.lpc_order;
  return static_cast<int>(std::lround(2.0 + sample_rate_hz / 1000.0));
}

std::vector<FormantCandidate> FrameFormants(std::span<const double> frame,
                                            int sample_rate_hz,
                                            const FormantOptions &opts) {
  const int order = ResolveLpcOrder(opts, sample_rate_hz);
  if (frame.size() <= static_cast<std::size_t>(order) + 1)
    Fail(ErrorKind::AudioTooShort, "frame shorter than the LPC order");
  // Pre-emphasis then window.
  std::vector<double> x(frame.size());
  x[0] = frame[0];
  for (std::size_t i = 1; i < frame.size(); ++i)
    x[i] = frame[i] - opts.preemphasis * frame[i - 1];
  const auto window = MakeWindow(opts.window, x.size());
  for (std::size_t i = 0; i < x.size(); ++i) x[i] *= window[i];

  const auto r = Autocorrelation(x, static_cast<std::size_t>(order));
  const auto lpc = LevinsonDurbin(r, order);
  if (!lpc.stable) Fail(ErrorKind::LpcUnstable, "reflection coefficient |k| >= 1");

  const double fs = sample_rate_hz;
  const double f_hi = fs / 2.0 - opts.nyquist_margin_hz;
  std::vector<FormantCandidate> out;
  for (const auto &z : LpcRoots(lpc.a)) {
    if (z.imag() <= 0.0) continue;
    const double mag = std::abs(z);
    if (!(mag > 0.0)) continue;
    FormantCandidate c;
    c.frequency_hz = std::arg(z) * fs / (2.0 * std::numbers::pi);
    c.bandwidth_hz = -std::log(mag) * fs / std::numbers::pi;
    if (c.bandwidth_hz < opts.max_bandwidth_hz &&
        c.frequency_hz >= opts.min_frequency_hz && c.frequency_hz <= f_hi)
      out.push_back(c);
  }
  std::sort(out.begin(), out.end(),
            [](const FormantCandidate &a, const FormantCandidate &b) {
              return a.frequency_hz < b.frequency_hz;
            });
  return out;
}

FormantTrack TrackFormants(const AudioBuffer &audio, const PitchTrack &pitch,
                           const FormantOptions &opts) {
  if (audio.sample_rate_hz < kMinSampleRateHz)
    Fail(ErrorKind::ResampleRequired, "sample rate below 8000 Hz");
  FormantTrack track;
  std::size_t voiced = 0, unstable = 0;
  for (std::size_t f = 0; f < pitch.n_frames(); ++f) {
    if (!pitch.voiced(f)) continue;
    ++voiced;
    const std::size_t start = f * pitch.hop_length;
    if (start + pitch.frame_length > audio.samples.size()) continue;
    const std::span<const double> frame(audio.samples.data() + start,
                                        pitch.frame_length);
    std::vector<FormantCandidate> cands;
    try {
      cands = FrameFormants(frame, audio.sample_rate_hz, opts);
    } catch (const Error &e) {
      if (e.kind() != ErrorKind::LpcUnstable) throw;
      ++unstable;
      continue;
    }
    if (cands.size() < 2) continue;
    track.f1_hz.push_back(cands[0].frequency_hz);
    track.f2_hz.push_back(cands[1].frequency_hz);
    track.frame_times_s.push_back(pitch.FrameCenterSeconds(f));
  }
  if (voiced == 0) Fail(ErrorKind::NoVoicedFrames, "no voiced frames for formants");
  if (unstable == voiced)
    Fail(ErrorKind::LpcUnstable, "LPC unstable on every voiced frame");
  return track;
}

double VsaProxy(const FormantTrack &track) {
  const std::size_t n = track.size();
  if (n < 2)
    Fail(ErrorKind::InsufficientFrames,
         std::to_string(n) + " formant frame(s), need 2");
  auto variance = [n](const std::vector<double> &v) {
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    return ss / static_cast<double>(n);
  };
  return std::sqrt(variance(track.f1_hz) + variance(track.f2_hz));
}

}  // namespace hdspeech
