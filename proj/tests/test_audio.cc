// tests/test_audio.cc

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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <functional>
#include <numbers>
#include <vector>

#include "hdspeech/audio.h"
#include "hdspeech/error.h"

using namespace hdspeech;

namespace {

void Put16(std::vector<unsigned char> *b, std::uint16_t v) {
  b->push_back(v & 0xff);
  b->push_back(v >> 8);
}
void Put32(std::vector<unsigned char> *b, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) b->push_back((v >> (8 * i)) & 0xff);
}
void PutTag(std::vector<unsigned char> *b, const char *tag) {
  b->insert(b->end(), tag, tag + 4);
}

// Minimal RIFF/WAVE with one fmt and one data chunk.
std::vector<unsigned char> Wav(std::uint16_t format, std::uint16_t channels,
                               std::uint32_t rate, std::uint16_t bits,
                               const std::vector<unsigned char> &data,
                               std::uint32_t declared_data_size = 0xffffffff) {
  std::vector<unsigned char> b;
  PutTag(&b, "RIFF");
  Put32(&b, static_cast<std::uint32_t>(36 + data.size()));
  PutTag(&b, "WAVE");
  PutTag(&b, "fmt ");
  Put32(&b, 16);
  Put16(&b, format);
  Put16(&b, channels);
  Put32(&b, rate);
  Put32(&b, rate * channels * bits / 8);
  Put16(&b, static_cast<std::uint16_t>(channels * bits / 8));
  Put16(&b, bits);
  PutTag(&b, "data");
  Put32(&b, declared_data_size == 0xffffffff ? static_cast<std::uint32_t>(data.size())
                                             : declared_data_size);
  b.insert(b.end(), data.begin(), data.end());
  return b;
}

std::vector<unsigned char> Pcm16(std::initializer_list<std::int16_t> v) {
  std::vector<unsigned char> d;
  for (std::int16_t s : v) Put16(&d, static_cast<std::uint16_t>(s));
  return d;
}

ErrorKind KindOf(const std::function<void()> &fn) {
  try {
    fn();
  } catch (const Error &e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::Io;
}

}  // namespace

TEST_CASE("pcm16 samples are scaled by 2^15") {
  const auto bytes = Wav(1, 1, 16000, 16, Pcm16({16384, -16384}));
  const auto a = ParseWav(bytes);
  REQUIRE(a.samples.size() == 2);
  CHECK(a.samples[0] == 0.5);
  CHECK(a.samples[1] == -0.5);
  CHECK(a.sample_rate_hz == 16000);
}

TEST_CASE("stereo is downmixed by channel mean") {
  std::vector<unsigned char> d;
  for (float f : {1.0f, 0.0f}) {
    std::uint32_t u;
    std::memcpy(&u, &f, 4);
    Put32(&d, u);
  }
  const auto a = ParseWav(Wav(3, 2, 16000, 32, d));
  REQUIRE(a.samples.size() == 1);
  CHECK(a.samples[0] == 0.5);
}

TEST_CASE("degenerate and unsupported files") {
  CHECK(KindOf([] { ParseWav(Wav(1, 1, 16000, 16, {})); }) == ErrorKind::EmptyAudio);
  // mu-law
  CHECK(KindOf([] { ParseWav(Wav(7, 1, 16000, 8, {1, 2})); }) == ErrorKind::UnsupportedFormat);
  // 24-bit PCM is not in v1
  CHECK(KindOf([] { ParseWav(Wav(1, 1, 16000, 24, {1, 2, 3})); }) ==
        ErrorKind::UnsupportedFormat);
  // data chunk claims more bytes than present
  CHECK(KindOf([] { ParseWav(Wav(1, 1, 16000, 16, Pcm16({1, 2}), 400)); }) ==
        ErrorKind::CorruptFile);
  CHECK(KindOf([] {
          const std::vector<unsigned char> junk = {'R', 'I', 'F', 'F', 0, 0};
          ParseWav(junk);
        }) == ErrorKind::CorruptFile);
  CHECK(KindOf([] { ParseWav(Wav(1, 1, 4000, 16, Pcm16({1, 2}))); }) ==
        ErrorKind::ResampleRequired);
  CHECK(KindOf([] { LoadWav("/nonexistent/file.wav"); }) == ErrorKind::Io);
}

TEST_CASE("pcm16 round trip is within one quantization step") {
  AudioBuffer a;
  for (int i = 0; i < 1000; ++i) a.samples.push_back(std::sin(0.01 * i * i) * 0.99);
  const auto back = ParseWav(EncodeWav(a, WavEncoding::kPcm16));
  REQUIRE(back.samples.size() == a.samples.size());
  for (std::size_t i = 0; i < a.samples.size(); ++i)
    CHECK(std::abs(back.samples[i] - a.samples[i]) <= 1.0 / 32768.0);
  const auto fl = ParseWav(EncodeWav(a, WavEncoding::kFloat32));
  for (std::size_t i = 0; i < a.samples.size(); ++i)
    CHECK(std::abs(fl.samples[i] - a.samples[i]) < 1e-7);

  const auto path = std::filesystem::temp_directory_path() / "hdspeech_test_audio.wav";
  WriteWav(path, a);
  CHECK(LoadWav(path).samples == back.samples);
  std::filesystem::remove(path);
}

TEST_CASE("frame counts") {
  AudioBuffer a;
  a.samples.assign(16000, 0.1);
  CHECK(FrameSignal(a, FrameSpec()).n_frames() == 98);
  a.samples.assign(400, 0.1);
  CHECK(FrameSignal(a, FrameSpec()).n_frames() == 1);
  a.samples.assign(399, 0.1);
  CHECK(KindOf([&] { FrameSignal(a, FrameSpec()); }) == ErrorKind::AudioTooShort);
  CHECK(NumFrames(16000, 400, 160) == 98);
  FrameSpec bad;
  bad.hop_ms = 30.0;
  CHECK(KindOf([&] { bad.Validate(); }) == ErrorKind::InvalidRange);
}

TEST_CASE("frame starts do not drift over ten minutes") {
  AudioBuffer a;
  a.samples.assign(16000 * 600, 0.0);
  const auto s = FrameSignal(a, FrameSpec());
  CHECK(s.n_frames() == (a.samples.size() - 400) / 160 + 1);
  for (std::size_t i = 0; i < s.n_frames(); i += 997) CHECK(s.FrameStart(i) == i * 160);
  CHECK(s.FrameStart(s.n_frames() - 1) == (s.n_frames() - 1) * 160);
}

TEST_CASE("frame rms") {
  FrameSpec rect;
  rect.window = WindowType::kRectangular;
  AudioBuffer a;
  a.samples.assign(400, 0.0);
  CHECK(FrameRms(FrameSignal(a, rect))[0] == 0.0);
  a.samples.assign(400, 0.5);
  CHECK(FrameRms(FrameSignal(a, rect))[0] == doctest::Approx(0.5).epsilon(1e-12));
  // 400 samples at 16 kHz hold exactly 10 cycles of 400 Hz.
  for (std::size_t i = 0; i < 400; ++i)
    a.samples[i] = std::sin(2.0 * std::numbers::pi * 400.0 * i / 16000.0);
  const double rms = FrameRms(FrameSignal(a, rect))[0];
  CHECK(std::abs(rms - 1.0 / std::sqrt(2.0)) < 1e-3);

  // sign flip invariance, Hamming window
  AudioBuffer neg = a;
  for (double &x : neg.samples) x = -x;
  CHECK(FrameRms(FrameSignal(a, FrameSpec())) == FrameRms(FrameSignal(neg, FrameSpec())));
}

TEST_CASE("windows") {
  const auto h = MakeWindow(WindowType::kHamming, 5);
  CHECK(h[0] == doctest::Approx(0.08));
  CHECK(h[2] == doctest::Approx(1.0));
  CHECK(h[4] == doctest::Approx(0.08));
  const auto r = MakeWindow(WindowType::kRectangular, 4);
  for (double w : r) CHECK(w == 1.0);
  const auto g = MakeWindow(WindowType::kGaussian, 9);
  CHECK(g[4] == doctest::Approx(1.0));
  CHECK(g[0] == doctest::Approx(g[8]));
  CHECK(g[0] < g[2]);
  CHECK(ParseWindow("gaussian") == WindowType::kGaussian);
  CHECK(WindowName(WindowType::kHamming) == "hamming");
}
