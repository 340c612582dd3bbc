// hdspeech/audio.h

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

// Audio substrate shared by all extractors: WAV I/O, framing, windowing and
// per-frame energy.

#ifndef HDSPEECH_AUDIO_H_
#define HDSPEECH_AUDIO_H_

#include <cstddef>
#include <filesystem>
#include <span>
#include <string_view>
#include <vector>

namespace hdspeech {

inline constexpr int kMinSampleRateHz = 8000;

// Mono PCM in [-1, 1] at its native rate.
struct AudioBuffer {
  std::vector<double> samples;
  int sample_rate_hz = 16000;

  double DurationSeconds() const {
    return static_cast<double>(samples.size()) / sample_rate_hz;
  }
};

enum class WindowType { kRectangular, kHamming, kGaussian };

std::string_view WindowName(WindowType w);
WindowType ParseWindow(std::string_view name);

struct FrameSpec {
  double frame_len_ms = 25.0;
  double hop_ms = 10.0;
  WindowType window = WindowType::kHamming;

  std::size_t FrameLength(int sample_rate_hz) const;
  std::size_t HopLength(int sample_rate_hz) const;
  // Throws InvalidRange unless frame_len_ms >= hop_ms > 0.
  void Validate() const;
};

// Window coefficients of length n (symmetric).
std::vector<double> MakeWindow(WindowType type, std::size_t n);

// Row-major frames x frame_length matrix of windowed samples.
class FrameSeries {
 public:
  FrameSeries() = default;
  FrameSeries(std::vector<double> data, std::size_t n_frames,
              std::size_t frame_length, std::size_t hop_length, double hop_ms);

  std::size_t n_frames() const { return n_frames_; }
  std::size_t frame_length() const { return frame_length_; }
  std::size_t hop_length() const { return hop_length_; }
  double hop_ms() const { return hop_ms_; }
  bool empty() const { return n_frames_ == 0; }

  std::span<const double> frame(std::size_t i) const {
    return {data_.data() + i * frame_length_, frame_length_};
  }
  // Index of the first sample of frame i in the source signal.
  std::size_t FrameStart(std::size_t i) const { return i * hop_length_; }

 private:
  std::vector<double> data_;
  std::size_t n_frames_ = 0;
  std::size_t frame_length_ = 0;
  std::size_t hop_length_ = 0;
  double hop_ms_ = 0.0;
};

// floor((n_samples - frame_len) / hop) + 1, or 0 if the signal is shorter
// than one frame.
std::size_t NumFrames(std::size_t n_samples, std::size_t frame_length,
                      std::size_t hop_length);

// Reads RIFF/WAVE PCM16 or IEEE float32, any channel count; channels are
// averaged to mono.
AudioBuffer LoadWav(const std::filesystem::path &path);
AudioBuffer ParseWav(std::span<const unsigned char> bytes);

enum class WavEncoding { kPcm16, kFloat32 };
void WriteWav(const std::filesystem::path &path, const AudioBuffer &audio,
              WavEncoding encoding = WavEncoding::kPcm16);
std::vector<unsigned char> EncodeWav(const AudioBuffer &audio,
                                     WavEncoding encoding);

// Contiguous hop-spaced windowed frames; the tail that does not fill a frame
// is dropped. Throws AudioTooShort.
FrameSeries FrameSignal(const AudioBuffer &audio, const FrameSpec &spec);

// sqrt(mean(x^2)) of every (windowed) frame.
std::vector<double> FrameRms(const FrameSeries &series);

}  // namespace hdspeech

#endif  // HDSPEECH_AUDIO_H_
