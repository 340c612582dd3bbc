// hdspeech/mel_internal.h

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

// Helpers shared between the parallel log-mel kernel and its serial twin.

#ifndef HDSPEECH_MEL_INTERNAL_H_
#define HDSPEECH_MEL_INTERNAL_H_

#include <cstddef>
#include <span>
#include <vector>

#include "hdspeech/trainer.h"

namespace hdspeech {
namespace internal {

inline constexpr double kLogMelFloor = 1e-6;

// Smallest power of two >= n.
std::size_t FftSizeFor(std::size_t n);

// |X_k|^2 for k = 0..n/2 of the zero-padded frame. Safe to call from
// several threads at once; plans are made once per size under a lock.
void PowerSpectrum(std::span<const double> frame, std::size_t fft_size,
                   std::vector<double> *power);

// log(filterbank * power + floor) into out (n_mels values).
void LogMelFromPower(const MelFilterbank &fb, std::span<const double> power,
                     double *out);

}  // namespace internal
}  // namespace hdspeech

#endif  // HDSPEECH_MEL_INTERNAL_H_
