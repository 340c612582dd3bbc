// src/audio.cc

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

#include "hdspeech/audio.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <numbers>
#include <string>

#include "hdspeech/error.h"

namespace hdspeech {

namespace {

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatFloat = 3;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

std::uint16_t ReadU16(const unsigned char *p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

std::uint32_t ReadU32(const unsigned char *p) {
  return static_cast<std::uint32_t>(p[0]) |
         (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) |
         (static_cast<std::uint32_t>(p[3]) << 24);
}

void PutU16(std::vector<unsigned char> *out, std::uint16_t v) {
  out->push_back(static_cast<unsigned char>(v & 0xFF));
  out->push_back(static_cast<unsigned char>(v >> 8));
}

void PutU32(std::vector<unsigned char> *out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i)
    out->push_back(static_cast<unsigned char>((v >> (8 * i)) & 0xFF));
}

void PutTag(std::vector<unsigned char> *out, const char *tag) {
  out->insert(out->end(), tag, tag + 4);
}

bool TagIs(const unsigned char *p, const char *tag) {
  return std::memcmp(p, tag, 4) == 0;
}

std::size_t RoundToSamples(double ms, int sample_rate_hz) {
  return static_cast<std::size_t>(std::lround(ms * sample_rate_hz / 1000.0));
}

}  // namespace

std::string_view WindowName(WindowType w) {
  switch (w) {
    case WindowType::kRectangular: return "rectangular";
    case WindowType::kHamming: return "hamming";
    case WindowType::kGaussian: return "gaussian";
  }
  return "hamming";
}

WindowType ParseWindow(std::string_view name) {
  if (name == "rectangular") return WindowType::kRectangular;
  if (name == "hamming") return WindowType::kHamming;
  if (name == "gaussian") return WindowType::kGaussian;
  Fail(ErrorKind::InvalidConfig, "unknown window '" + std::string(name) + "'");
}

std::size_t FrameSpec::FrameLength(int sample_rate_hz) const {
  return RoundToSamples(frame_len_ms, sample_rate_hz);
}

std::size_t FrameSpec::HopLength(int sample_rate_hz) const {
  return std::max<std::size_t>(1, RoundToSamples(hop_ms, sample_rate_hz));
}

void FrameSpec::Validate() const {
  if (!(hop_ms > 0.0) || !(frame_len_ms >= hop_ms))
    Fail(ErrorKind::InvalidRange, "frame spec requires frame_len_ms >= hop_ms > 0");
}

std::vector<double> MakeWindow(WindowType type, std::size_t n) {
  std::vector<double> w(n, 1.0);
  if (n < 2) return w;
  const double denom = static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = static_cast<double>(i) / denom;
    switch (type) {
      case WindowType::kRectangular:
        break;
      case WindowType::kHamming:
        w[i] = 0.54 - 0.46 * std::cos(2.0 * std::numbers::pi * x);
        break;
      case WindowType::kGaussian: {
        // sigma = 0.4 of the half-length.
        const double u = (x - 0.5) / (0.4 * 0.5);
        w[i] = std::exp(-0.5 * u * u);
        break;
      }
    }
  }
  return w;
}

FrameSeries::FrameSeries(std::vector<double> data, std::size_t n_frames,
                         std::size_t frame_length, std::size_t hop_length,
                         double hop_ms)
    : data_(std::move(data)),
      n_frames_(n_frames),
      frame_length_(frame_length),
      hop_length_(hop_length),
      hop_ms_(hop_ms) {}

std::size_t NumFrames(std::size_t n_samples, std::size_t frame_length,
                      std::size_t hop_length) {
  if (frame_length == 0 || hop_length == 0 || n_samples < frame_length)
    return 0;
  return (n_samples - frame_length) / hop_length + 1;
}

AudioBuffer ParseWav(std::span<const unsigned char> bytes) {
  if (bytes.size() < 12 || !TagIs(bytes.data(), "RIFF") ||
      !TagIs(bytes.data() + 8, "WAVE")) {
    if (bytes.size() >= 4 && TagIs(bytes.data(), "RIFF"))
      Fail(ErrorKind::CorruptFile, "truncated RIFF header");
    Fail(ErrorKind::UnsupportedFormat, "not a RIFF/WAVE file");
  }

  bool have_fmt = false;
  std::uint16_t format = 0, channels = 0, bits = 0, block_align = 0;
  std::uint32_t rate = 0;
  const unsigned char *data = nullptr;
  std::size_t data_size = 0;

  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const unsigned char *chunk = bytes.data() + pos;
    const std::uint32_t size = ReadU32(chunk + 4);
    const std::size_t body = pos + 8;
    if (size > bytes.size() - body)
      Fail(ErrorKind::CorruptFile, "chunk extends past end of file");
    if (TagIs(chunk, "fmt ")) {
      if (size < 16) Fail(ErrorKind::CorruptFile, "fmt chunk too short");
      const unsigned char *f = bytes.data() + body;
      format = ReadU16(f);
      channels = ReadU16(f + 2);
      rate = ReadU32(f + 4);
      block_align = ReadU16(f + 12);
      bits = ReadU16(f + 14);
      if (format == kFormatExtensible) {
        if (size < 40) Fail(ErrorKind::CorruptFile, "extensible fmt chunk too short");
        format = ReadU16(f + 24);  // first two bytes of the subformat GUID
      }
      have_fmt = true;
    } else if (TagIs(chunk, "data")) {
      data = bytes.data() + body;
      data_size = size;
    }
    pos = body + size + (size & 1u);
  }
  if (!have_fmt) Fail(ErrorKind::CorruptFile, "missing fmt chunk");
  if (data == nullptr) Fail(ErrorKind::CorruptFile, "missing data chunk");

  const bool pcm16 = format == kFormatPcm && bits == 16;
  const bool f32 = format == kFormatFloat && bits == 32;
  if (!pcm16 && !f32)
    Fail(ErrorKind::UnsupportedFormat,
         "format " + std::to_string(format) + " with " + std::to_string(bits) +
             " bits per sample");
  if (channels == 0) Fail(ErrorKind::CorruptFile, "zero channels");
  const std::size_t sample_bytes = bits / 8;
  if (block_align != channels * sample_bytes)
    Fail(ErrorKind::CorruptFile, "inconsistent block alignment");
  if (data_size % block_align != 0)
    Fail(ErrorKind::CorruptFile, "data chunk is not a whole number of frames");
  const std::size_t n = data_size / block_align;
  if (n == 0) Fail(ErrorKind::EmptyAudio, "zero samples");
  if (rate < static_cast<std::uint32_t>(kMinSampleRateHz))
    Fail(ErrorKind::ResampleRequired,
         "sample rate " + std::to_string(rate) + " Hz is below 8000 Hz");

  AudioBuffer audio;
  audio.sample_rate_hz = static_cast<int>(rate);
  audio.samples.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    double sum = 0.0;
    for (std::size_t c = 0; c < channels; ++c) {
      const unsigned char *p = data + i * block_align + c * sample_bytes;
      double v;
      if (pcm16) {
        v = static_cast<std::int16_t>(ReadU16(p)) / 32768.0;
      } else {
        v = static_cast<double>(std::bit_cast<float>(ReadU32(p)));
        if (!std::isfinite(v)) Fail(ErrorKind::CorruptFile, "non-finite sample");
        v = std::clamp(v, -1.0, 1.0);
      }
      sum += v;
    }
    audio.samples[i] = sum / channels;
  }
  return audio;
}

AudioBuffer LoadWav(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(ErrorKind::Io, "cannot open " + path.string());
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
  try {
    return ParseWav(bytes);
  } catch (const Error &e) {
    throw Error(e.kind(), path.string() + ": " + e.detail());
  }
}

std::vector<unsigned char> EncodeWav(const AudioBuffer &audio,
                                     WavEncoding encoding) {
  const bool pcm16 = encoding == WavEncoding::kPcm16;
  const std::uint16_t bits = pcm16 ? 16 : 32;
  const std::uint32_t data_size =
      static_cast<std::uint32_t>(audio.samples.size() * (bits / 8));
  std::vector<unsigned char> out;
  out.reserve(44 + data_size);
  PutTag(&out, "RIFF");
  PutU32(&out, 36 + data_size);
  PutTag(&out, "WAVE");
  PutTag(&out, "fmt ");
  PutU32(&out, 16);
  PutU16(&out, pcm16 ? kFormatPcm : kFormatFloat);
  PutU16(&out, 1);
  PutU32(&out, static_cast<std::uint32_t>(audio.sample_rate_hz));
  PutU32(&out, static_cast<std::uint32_t>(audio.sample_rate_hz) * (bits / 8));
  PutU16(&out, bits / 8);
  PutU16(&out, bits);
  PutTag(&out, "data");
  PutU32(&out, data_size);
  for (double s : audio.samples) {
    const double c = std::clamp(s, -1.0, 1.0);
    if (pcm16) {
      const long q = std::lround(c * 32768.0);
      PutU16(&out, static_cast<std::uint16_t>(
                       static_cast<std::int16_t>(std::clamp(q, -32768L, 32767L))));
    } else {
      PutU32(&out, std::bit_cast<std::uint32_t>(static_cast<float>(c)));
    }
  }
  return out;
}

void WriteWav(const std::filesystem::path &path, const AudioBuffer &audio,
              WavEncoding encoding) {
  const auto bytes = EncodeWav(audio, encoding);
  std::ofstream out(path, std::ios::binary);
  if (!out) Fail(ErrorKind::Io, "cannot write " + path.string());
  out.write(reinterpret_cast<const char *>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) Fail(ErrorKind::Io, "write failed for " + path.string());
}

FrameSeries FrameSignal(const AudioBuffer &audio, const FrameSpec &spec) {
  spec.Validate();
  const std::size_t len = spec.FrameLength(audio.sample_rate_hz);
  const std::size_t hop = spec.HopLength(audio.sample_rate_hz);
  const std::size_t n = NumFrames(audio.samples.size(), len, hop);
  if (n == 0)
    Fail(ErrorKind::AudioTooShort,
         std::to_string(audio.samples.size()) + " samples, frame needs " +
             std::to_string(len));
  const auto window = MakeWindow(spec.window, len);
  std::vector<double> data(n * len);
  for (std::size_t f = 0; f < n; ++f) {
    const double *src = audio.samples.data() + f * hop;
    double *dst = data.data() + f * len;
    for (std::size_t i = 0; i < len; ++i) dst[i] = src[i] * window[i];
  }
  return FrameSeries(std::move(data), n, len, hop, spec.hop_ms);
}

std::vector<double> FrameRms(const FrameSeries &series) {
  if (series.empty()) Fail(ErrorKind::EmptySeries, "no frames");
  std::vector<double> rms(series.n_frames());
  for (std::size_t f = 0; f < series.n_frames(); ++f) {
    double acc = 0.0;
    for (double x : series.frame(f)) acc += x * x;
    rms[f] = std::sqrt(acc / static_cast<double>(series.frame_length()));
  }
  return rms;
}

}  // namespace hdspeech
