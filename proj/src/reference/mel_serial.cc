// src/reference/mel_serial.cc

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

#include "hdspeech/mel_internal.h"
#include "hdspeech/reference.h"

namespace hdspeech::reference {

Eigen::MatrixXd LogMelSerial(const AudioBuffer &audio, const ToyEncoderConfig &cfg) {
  const auto frames = FrameSignal(audio, cfg.frame);
  const std::size_t fft_size = internal::FftSizeFor(frames.frame_length());
  const MelFilterbank fb(cfg.n_mels, fft_size, audio.sample_rate_hz);
  Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> out(
      static_cast<Eigen::Index>(frames.n_frames()), cfg.n_mels);
  std::vector<double> power;
  for (std::size_t t = 0; t < frames.n_frames(); ++t) {
    internal::PowerSpectrum(frames.frame(t), fft_size, &power);
    internal::LogMelFromPower(fb, power, out.row(static_cast<Eigen::Index>(t)).data());
  }
  return out;
}

}  // namespace hdspeech::reference
