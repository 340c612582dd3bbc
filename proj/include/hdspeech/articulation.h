// hdspeech/articulation.h

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

// LPC formant tracking over voiced frames and the formant-dispersion
// vowel space proxy.

#ifndef HDSPEECH_ARTICULATION_H_
#define HDSPEECH_ARTICULATION_H_

#include <complex>
#include <span>
#include <vector>

#include "hdspeech/audio.h"
#include "hdspeech/prosody.h"

namespace hdspeech {

struct FormantOptions {
  double preemphasis = 0.94;
  // 0 selects round(2 + sample_rate_hz / 1000).
  int lpc_order = 0;
  double max_bandwidth_hz = 400.0;
  double min_frequency_hz = 90.0;
  // Candidates above sample_rate/2 minus this margin are discarded.
  double nyquist_margin_hz = 50.0;
  WindowType window = WindowType::kHamming;
};

struct FormantTrack {
  std::vector<double> f1_hz;
  std::vector<double> f2_hz;
  std::vector<double> frame_times_s;

  std::size_t size() const { return f1_hz.size(); }
};

struct LpcResult {
  std::vector<double> a;  // a[0] = 1; A(z) = sum_k a[k] z^-k
  double error = 0.0;     // final prediction error power
  bool stable = true;     // every |k_i| < 1
};

// Autocorrelation lags r[0..max_lag] of x.
std::vector<double> Autocorrelation(std::span<const double> x,
                                    std::size_t max_lag);

// Levinson-Durbin on r[0..order]; stops (stable = false) at the first
// reflection coefficient with |k| >= 1.
LpcResult LevinsonDurbin(std::span<const double> r, int order);

// Roots of A(z) expressed as z^p + a1 z^(p-1) + ... + ap.
std::vector<std::complex<double>> LpcRoots(std::span<const double> a);

struct FormantCandidate {
  double frequency_hz = 0.0;
  double bandwidth_hz = 0.0;
};

// Formant candidates of one frame, ascending by frequency, after the
// bandwidth and frequency gates. Throws LpcUnstable.
std::vector<FormantCandidate> FrameFormants(std::span<const double> frame,
                                            int sample_rate_hz,
                                            const FormantOptions &opts);

int ResolveLpcOrder(const FormantOptions &opts, int sample_rate_hz);

// Throws NoVoicedFrames; LpcUnstable when every voiced frame was unstable.
FormantTrack TrackFormants(const AudioBuffer &audio, const PitchTrack &pitch,
                           const FormantOptions &opts = FormantOptions());

// sqrt(var(F1) + var(F2)), population variances. Throws InsufficientFrames.
double VsaProxy(const FormantTrack &track);

struct ArticulationFeatures {
  double vsa_proxy = 0.0;
};

}  // namespace hdspeech

#endif  // HDSPEECH_ARTICULATION_H_
