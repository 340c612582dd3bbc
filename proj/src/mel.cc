// src/mel.cc

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

#include <fftw3.h>

#include <cmath>
#include <map>
#include <numbers>
#include <mutex>

#include "hdspeech/error.h"
#include "hdspeech/mel_internal.h"
#include "hdspeech/trainer.h"

namespace hdspeech {

double HzToMel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }
double MelToHz(double mel) { return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0); }

MelFilterbank::MelFilterbank(int n_mels, std::size_t fft_size, int sample_rate_hz)
    : fft_size_(fft_size) {
  if (n_mels <= 0 || fft_size < 2 || sample_rate_hz <= 0)
    Fail(ErrorKind::InvalidConfig, "bad mel filterbank shape");
  const std::size_t n_bins = fft_size / 2 + 1;
  const double nyquist = 0.5 * sample_rate_hz;
  const double mel_max = HzToMel(nyquist);
  std::vector<double> edges(static_cast<std::size_t>(n_mels) + 2);
  for (std::size_t i = 0; i < edges.size(); ++i)
    edges[i] = MelToHz(mel_max * static_cast<double>(i) / (n_mels + 1));
  weights_ = Eigen::MatrixXd::Zero(n_mels, static_cast<Eigen::Index>(n_bins));
  centers_hz_.resize(static_cast<std::size_t>(n_mels));
  for (int k = 0; k < n_mels; ++k) {
    const double lo = edges[k], mid = edges[k + 1], hi = edges[k + 2];
    centers_hz_[static_cast<std::size_t>(k)] = mid;
    for (std::size_t j = 0; j < n_bins; ++j) {
      const double f = static_cast<double>(j) * sample_rate_hz / static_cast<double>(fft_size);
      double w = 0.0;
      if (f > lo && f <= mid)
        w = (f - lo) / (mid - lo);
      else if (f > mid && f < hi)
        w = (hi - f) / (hi - mid);
      weights_(k, static_cast<Eigen::Index>(j)) = w;
    }
  }
}

namespace internal {

std::size_t FftSizeFor(std::size_t n) {
  std::size_t size = 1;
  while (size < n) size <<= 1;
  return size;
}

namespace {

std::mutex g_plan_mutex;

fftw_plan PlanFor(std::size_t n) {
  static std::map<std::size_t, fftw_plan> plans;
  std::lock_guard<std::mutex> lock(g_plan_mutex);
  auto it = plans.find(n);
  if (it != plans.end()) return it->second;
  // ESTIMATE keeps the chosen algorithm, hence the bits, fixed across runs.
  double *in = fftw_alloc_real(n);
  fftw_complex *out = fftw_alloc_complex(n / 2 + 1);
  fftw_plan plan = fftw_plan_dft_r2c_1d(static_cast<int>(n), in, out, FFTW_ESTIMATE);
  fftw_free(in);
  fftw_free(out);
  plans.emplace(n, plan);
  return plan;
}

}  // namespace

void PowerSpectrum(std::span<const double> frame, std::size_t fft_size,
                   std::vector<double> *power) {
  if (frame.size() > fft_size) Fail(ErrorKind::ShapeMismatch, "frame longer than FFT");
  fftw_plan plan = PlanFor(fft_size);
  double *in = fftw_alloc_real(fft_size);
  fftw_complex *out = fftw_alloc_complex(fft_size / 2 + 1);
  for (std::size_t i = 0; i < fft_size; ++i) in[i] = i < frame.size() ? frame[i] : 0.0;
  fftw_execute_dft_r2c(plan, in, out);
  power->resize(fft_size / 2 + 1);
  for (std::size_t k = 0; k < power->size(); ++k)
    (*power)[k] = out[k][0] * out[k][0] + out[k][1] * out[k][1];
  fftw_free(in);
  fftw_free(out);
}

void LogMelFromPower(const MelFilterbank &fb, std::span<const double> power,
                     double *out) {
  const Eigen::Map<const Eigen::VectorXd> p(power.data(),
                                            static_cast<Eigen::Index>(power.size()));
  const Eigen::VectorXd mel = fb.weights() * p;
  for (Eigen::Index k = 0; k < mel.size(); ++k) out[k] = std::log(mel(k) + kLogMelFloor);
}

}  // namespace internal

Eigen::MatrixXd LogMel(const AudioBuffer &audio, const ToyEncoderConfig &cfg) {
  const auto frames = FrameSignal(audio, cfg.frame);
  const std::size_t fft_size = internal::FftSizeFor(frames.frame_length());
  const MelFilterbank fb(cfg.n_mels, fft_size, audio.sample_rate_hz);
  // Row-major so each frame writes one contiguous row.
  Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> out(
      static_cast<Eigen::Index>(frames.n_frames()), cfg.n_mels);
  const auto n = static_cast<long>(frames.n_frames());
#pragma omp parallel
  {
    std::vector<double> power;
#pragma omp for schedule(static)
    for (long t = 0; t < n; ++t) {
      internal::PowerSpectrum(frames.frame(static_cast<std::size_t>(t)), fft_size, &power);
      internal::LogMelFromPower(fb, power, out.row(t).data());
    }
  }
  return out;
}

Eigen::MatrixXd Cmvn(const Eigen::MatrixXd &features) {
  Eigen::MatrixXd out = features;
  if (features.rows() == 0) return out;
  const double n = static_cast<double>(features.rows());
  for (Eigen::Index c = 0; c < features.cols(); ++c) {
    const double mean = features.col(c).sum() / n;
    const double var = (features.col(c).array() - mean).square().sum() / n;
    out.col(c).array() -= mean;
    if (var > 1e-12) out.col(c) /= std::sqrt(var);
  }
  return out;
}

Eigen::MatrixXd Cepstra(const Eigen::MatrixXd &log_mel) {
  const Eigen::Index n = log_mel.cols();
  Eigen::MatrixXd dct(n, n);
  for (Eigen::Index k = 0; k < n; ++k)
    for (Eigen::Index j = 0; j < n; ++j)
      dct(k, j) = std::sqrt((k == 0 ? 1.0 : 2.0) / static_cast<double>(n)) *
                  std::cos(std::numbers::pi * static_cast<double>(k) *
                           (static_cast<double>(j) + 0.5) / static_cast<double>(n));
  return log_mel * dct.transpose();
}

Eigen::MatrixXd ToyFeatures(const AudioBuffer &audio, const ToyEncoderConfig &cfg) {
  return Cmvn(Cepstra(LogMel(audio, cfg)));
}

}  // namespace hdspeech
