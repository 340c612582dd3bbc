// bench/bench_kernels.cc

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

// OpenMP kernels against their serial twins.

#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "hdspeech/reference.h"
#include "hdspeech/rng.h"
#include "hdspeech/scoring.h"
#include "hdspeech/synth.h"
#include "hdspeech/trainer.h"

using namespace hdspeech;

namespace {

const AudioBuffer &Audio() {
  static const AudioBuffer audio = [] {
    SynthSpec s;
    s.kind = SynthKind::kJitterTone;
    s.f0_hz = 120.0;
    s.epsilon = 0.02;
    s.duration_s = 10.0;
    s.amplitude = 0.5;
    return SynthSignal(s);
  }();
  return audio;
}

const std::vector<ScoreRecord> &Records() {
  static const std::vector<ScoreRecord> recs = [] {
    Rng rng(1);
    std::vector<ScoreRecord> out;
    for (int i = 0; i < 2000; ++i) {
      ScoreRecord r{"u" + std::to_string(i), "m", Cohort::kControl, "", ""};
      for (int w = 0; w < 20 + static_cast<int>(rng.Below(40)); ++w)
        r.reference += std::string(1, static_cast<char>('a' + rng.Below(6))) + " ";
      for (int w = 0; w < 20 + static_cast<int>(rng.Below(40)); ++w)
        r.hypothesis += std::string(1, static_cast<char>('a' + rng.Below(6))) + " ";
      out.push_back(r);
    }
    return out;
  }();
  return recs;
}

void BM_PitchFramesParallel(benchmark::State &state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(AnalyzePitchFrames(Audio(), FrameSpec(), PitchOptions()));
}
void BM_PitchFramesSerial(benchmark::State &state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(
        reference::AnalyzePitchFramesSerial(Audio(), FrameSpec(), PitchOptions()));
}

void BM_AlignRecordsParallel(benchmark::State &state) {
  for (auto _ : state) benchmark::DoNotOptimize(AlignRecords(Records()));
}
void BM_AlignRecordsSerial(benchmark::State &state) {
  for (auto _ : state) benchmark::DoNotOptimize(reference::AlignRecordsSerial(Records()));
}

void BM_LogMelParallel(benchmark::State &state) {
  const ToyEncoderConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(LogMel(Audio(), cfg));
}
void BM_LogMelSerial(benchmark::State &state) {
  const ToyEncoderConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(reference::LogMelSerial(Audio(), cfg));
}

}  // namespace

BENCHMARK(BM_PitchFramesParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PitchFramesSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AlignRecordsParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AlignRecordsSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LogMelParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LogMelSerial)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
