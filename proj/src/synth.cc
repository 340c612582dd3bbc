// src/synth.cc

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

#include "hdspeech/synth.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "hdspeech/error.h"
#include "hdspeech/rng.h"

namespace hdspeech {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Cycle {
  double start_s;
  double period_s;
  double gain;
};

// Cycles T0, T0(1+eps), T0, ... with gains alternating high/low, covering
// [0, duration).
std::vector<Cycle> MakeCycles(const SynthSpec &spec) {
  std::vector<Cycle> cycles;
  const double t0 = 1.0 / spec.f0_hz;
  double t = 0.0;
  for (std::size_t i = 0; t < spec.duration_s; ++i) {
    const bool odd = (i % 2) == 1;
    const double period = odd ? t0 * (1.0 + spec.epsilon) : t0;
    cycles.push_back({t, period, odd ? spec.shimmer_low : spec.shimmer_high});
    t += period;
  }
  return cycles;
}

std::size_t NumSamples(const SynthSpec &spec) {
  return static_cast<std::size_t>(std::lround(spec.duration_s * spec.sample_rate_hz));
}

void AddNoise(const SynthSpec &spec, double signal_power,
              std::vector<double> *x) {
  if (!spec.snr_db) return;
  Rng rng(DeriveSeed(spec.seed, "noise"));
  const double sd = std::sqrt(signal_power / std::pow(10.0, *spec.snr_db / 10.0));
  for (double &v : *x) v += sd * rng.Gaussian();
}

// Two cascaded unity-DC-gain resonators; coefficients follow the active
// formant segment.
std::vector<double> Resonate(const SynthSpec &spec,
                             const std::vector<double> &excitation) {
  const double fs = spec.sample_rate_hz;
  const std::size_t seg_len =
      spec.segment_s > 0.0
          ? std::max<std::size_t>(1, static_cast<std::size_t>(std::lround(spec.segment_s * fs)))
          : excitation.size() + 1;
  std::vector<double> y(excitation.size(), 0.0);
  double s1[2] = {0, 0}, s2[2] = {0, 0};  // per resonator y[n-1], y[n-2]
  for (std::size_t n = 0; n < excitation.size(); ++n) {
    const Formants &f = spec.formants[(n / seg_len) % spec.formants.size()];
    double v = excitation[n];
    const double freqs[2] = {f.f1_hz, f.f2_hz};
    double *state[2] = {s1, s2};
    for (int k = 0; k < 2; ++k) {
      const double r = std::exp(-std::numbers::pi * spec.bandwidths_hz[k] / fs);
      const double c = 2.0 * r * std::cos(kTwoPi * freqs[k] / fs);
      const double gain = 1.0 - c + r * r;
      const double out = gain * v + c * state[k][0] - r * r * state[k][1];
      state[k][1] = state[k][0];
      state[k][0] = out;
      v = out;
    }
    y[n] = v;
  }
  return y;
}

SynthSpec ToyWordSpec(const SynthSpec &spec) {
  SynthSpec word = spec;
  const Formants base = ToyLexicon()[static_cast<std::size_t>(spec.word)];
  word.formants = {base};
  if (!spec.formant_offsets_hz.empty()) {
    word.formants.clear();
    for (const auto &off : spec.formant_offsets_hz)
      word.formants.push_back({base.f1_hz + off[0], base.f2_hz + off[1]});
  }
  return word;
}

void Validate(const SynthSpec &spec) {
  auto bad = [](const std::string &why) { Fail(ErrorKind::InvalidSpec, why); };
  if (spec.sample_rate_hz < kMinSampleRateHz) bad("sample rate below 8000 Hz");
  if (!(spec.duration_s > 0.0)) bad("duration must be positive");
  if (!(spec.amplitude >= 0.0 && spec.amplitude <= 1.0)) bad("amplitude outside [0, 1]");
  const bool periodic = spec.kind != SynthKind::kNoise && spec.kind != SynthKind::kSilence;
  if (periodic && !(spec.f0_hz > 0.0 && spec.f0_hz < spec.sample_rate_hz / 2.0))
    bad("f0 must be in (0, sample_rate/2)");
  if (spec.epsilon < 0.0 || spec.epsilon > 1.0) bad("epsilon outside [0, 1]");
  if (spec.shimmer_low < 0.0 || spec.shimmer_high < 0.0) bad("negative shimmer gain");
  if (spec.formants.empty()) bad("no formant targets");
  if (spec.kind == SynthKind::kToyWord &&
      (spec.word < 0 || spec.word >= static_cast<int>(ToyLexicon().size())))
    bad("toy word index out of range");
  const auto &targets =
      spec.kind == SynthKind::kToyWord ? ToyWordSpec(spec).formants : spec.formants;
  for (const auto &f : targets)
    if (!(f.f1_hz > 0.0 && f.f2_hz > f.f1_hz && f.f2_hz < spec.sample_rate_hz / 2.0))
      bad("formants must satisfy 0 < F1 < F2 < sample_rate/2");
}

std::vector<double> PulseTrainFormant(const SynthSpec &spec) {
  const std::size_t n = NumSamples(spec);
  const double fs = spec.sample_rate_hz;
  std::vector<double> e(n, 0.0);
  for (const auto &c : MakeCycles(spec)) {
    const double pos = c.start_s * fs;
    const auto i = static_cast<std::size_t>(std::floor(pos));
    const double frac = pos - static_cast<double>(i);
    if (i < n) e[i] += (1.0 - frac) * c.gain;
    if (i + 1 < n) e[i + 1] += frac * c.gain;
  }
  auto y = Resonate(spec, e);
  double peak = 0.0;
  for (double v : y) peak = std::max(peak, std::abs(v));
  if (peak > 0.0)
    for (double &v : y) v *= spec.amplitude / peak;
  return y;
}

}  // namespace

const std::vector<Formants> &ToyLexicon() {
  static const std::vector<Formants> lexicon = {
      {300, 2300}, {400, 2000}, {550, 1800}, {700, 1200},
      {750, 1550}, {500, 1000}, {350, 800},  {600, 1400},
  };
  return lexicon;
}

char ToyWordChar(int word) { return static_cast<char>('a' + word); }

AudioBuffer SynthSignal(const SynthSpec &spec) {
  Validate(spec);
  AudioBuffer audio;
  audio.sample_rate_hz = spec.sample_rate_hz;
  const std::size_t n = NumSamples(spec);
  const double fs = spec.sample_rate_hz;
  auto &x = audio.samples;
  x.assign(n, 0.0);
  double power = 0.0;

  switch (spec.kind) {
    case SynthKind::kSilence:
      break;
    case SynthKind::kNoise: {
      Rng rng(DeriveSeed(spec.seed, "white"));
      for (double &v : x) v = spec.amplitude * rng.Gaussian();
      break;
    }
    case SynthKind::kTone: {
      const double f_end = spec.f0_end_hz.value_or(spec.f0_hz);
      const double sweep = (f_end - spec.f0_hz) / spec.duration_s;
      for (std::size_t i = 0; i < n; ++i) {
        const double t = i / fs;
        x[i] = spec.amplitude * std::sin(kTwoPi * (spec.f0_hz * t + 0.5 * sweep * t * t));
      }
      power = 0.5 * spec.amplitude * spec.amplitude;
      break;
    }
    case SynthKind::kSawtooth: {
      for (std::size_t i = 0; i < n; ++i) {
        const double phase = std::fmod(spec.f0_hz * static_cast<double>(i) / fs, 1.0);
        x[i] = spec.amplitude * (2.0 * phase - 1.0);
      }
      power = spec.amplitude * spec.amplitude / 3.0;
      break;
    }
    case SynthKind::kJitterTone:
    case SynthKind::kShimmerTone: {
      // Jitter cycles are cosines (peak at the cycle start, so peak spacing
      // equals the period); shimmer cycles are sines (zero at the joins, so
      // gain changes stay continuous).
      const bool cosine = spec.kind == SynthKind::kJitterTone;
      const auto cycles = MakeCycles(spec);
      std::size_t c = 0;
      for (std::size_t i = 0; i < n; ++i) {
        const double t = i / fs;
        while (c + 1 < cycles.size() && cycles[c + 1].start_s <= t) ++c;
        const double ph = kTwoPi * (t - cycles[c].start_s) / cycles[c].period_s;
        x[i] = spec.amplitude * cycles[c].gain * (cosine ? std::cos(ph) : std::sin(ph));
        power += x[i] * x[i];
      }
      power /= static_cast<double>(n);
      break;
    }
    case SynthKind::kPulseTrainFormant:
      x = PulseTrainFormant(spec);
      for (double v : x) power += v * v;
      power /= static_cast<double>(n);
      break;
    case SynthKind::kToyWord: {
      x = PulseTrainFormant(ToyWordSpec(spec));
      const auto ramp = std::min<std::size_t>(n / 2, static_cast<std::size_t>(0.01 * fs));
      for (std::size_t i = 0; i < ramp; ++i) {
        const double g = 0.5 - 0.5 * std::cos(std::numbers::pi * i / ramp);
        x[i] *= g;
        x[n - 1 - i] *= g;
      }
      for (double v : x) power += v * v;
      power /= static_cast<double>(n);
      break;
    }
  }
  AddNoise(spec, power, &x);
  for (double &v : x) v = std::clamp(v, -1.0, 1.0);
  return audio;
}

SeverityParams SeverityForCohort(Cohort cohort) {
  switch (cohort) {
    case Cohort::kControl: return {0.004, 0.02, 1.00, 15.0};
    case Cohort::kPreHd: return {0.012, 0.06, 1.35, 40.0};
    case Cohort::kProdromal: return {0.022, 0.10, 1.75, 70.0};
    case Cohort::kManifest: return {0.035, 0.15, 2.20, 110.0};
  }
  return {};
}

namespace {

std::vector<int> DefaultMix(int n) {
  const int control = static_cast<int>(std::lround(n * 36.0 / 130.0));
  const int rest = n - control;
  return {control, rest - 2 * (rest / 3), rest / 3, rest / 3};
}

// Offsets are clipped so that F1 stays above 150 Hz and F2 - F1 >= 200 Hz.
std::vector<std::array<double, 2>> ScatterOffsets(const Formants &base,
                                                  double scatter,
                                                  std::size_t segments, Rng *rng) {
  std::vector<std::array<double, 2>> out;
  for (std::size_t s = 0; s < segments; ++s) {
    const double f1 = std::max(150.0, base.f1_hz + scatter * rng->Gaussian());
    const double f2 = std::max(f1 + 200.0, base.f2_hz + scatter * rng->Gaussian());
    out.push_back({f1 - base.f1_hz, f2 - base.f2_hz});
  }
  return out;
}

void AppendSilence(double seconds, AudioBuffer *audio) {
  audio->samples.resize(audio->samples.size() +
                        static_cast<std::size_t>(std::lround(seconds * audio->sample_rate_hz)),
                        0.0);
}

}  // namespace

std::vector<SynthUtterance> SynthCorpus(const CorpusSpec &spec) {
  if (spec.n_speakers < 4) Fail(ErrorKind::InvalidSpec, "need at least 4 speakers");
  if (spec.utterances_per_speaker < 1)
    Fail(ErrorKind::InvalidSpec, "need at least one utterance per speaker");
  if (spec.sample_rate_hz < kMinSampleRateHz)
    Fail(ErrorKind::InvalidSpec, "sample rate below 8000 Hz");
  std::vector<int> mix = spec.cohort_mix.empty() ? DefaultMix(spec.n_speakers)
                                                 : spec.cohort_mix;
  int total = 0;
  for (int m : mix) {
    if (m < 0) Fail(ErrorKind::InvalidSpec, "negative cohort count");
    total += m;
  }
  if (mix.size() != 4 || total != spec.n_speakers)
    Fail(ErrorKind::InvalidSpec, "cohort mix must have 4 entries summing to n_speakers");

  const auto &lexicon = ToyLexicon();
  const int n_words = static_cast<int>(lexicon.size());
  std::vector<SynthUtterance> out;
  int speaker = 0;
  for (std::size_t ci = 0; ci < 4; ++ci) {
    const Cohort cohort = kAllCohorts[ci];
    const SeverityParams sev = SeverityForCohort(cohort);
    for (int k = 0; k < mix[ci]; ++k, ++speaker) {
      Rng rng(DeriveSeed(spec.seed, static_cast<std::uint64_t>(speaker)));
      char speaker_id[32];
      std::snprintf(speaker_id, sizeof(speaker_id), "spk%03d", speaker);
      const double f0 = rng.Uniform(95.0, 145.0);
      const double eps = sev.epsilon * rng.Uniform(0.85, 1.15);
      const double depth = sev.shimmer_depth * rng.Uniform(0.85, 1.15);

      for (int u = 0; u < spec.utterances_per_speaker; ++u) {
        SynthUtterance utt;
        char utt_id[48];
        std::snprintf(utt_id, sizeof(utt_id), "%s_u%02d", speaker_id, u);
        utt.record.utt_id = utt_id;
        utt.record.speaker_id = speaker_id;
        utt.record.cohort = cohort;
        utt.record.audio_path = std::string("wav/") + utt_id + ".wav";
        utt.audio.sample_rate_hz = spec.sample_rate_hz;

        const bool sustained = (u == 0);
        utt.record.task = sustained ? Task::kSustainedVowel : Task::kRead;
        const int count = sustained ? 1 : 3 + static_cast<int>(rng.Below(3));
        std::string transcript;
        AppendSilence(sustained ? 0.2 : 0.15, &utt.audio);
        for (int w = 0; w < count; ++w) {
          const int word = static_cast<int>(rng.Below(static_cast<std::uint64_t>(n_words)));
          SynthSpec ws;
          ws.kind = SynthKind::kToyWord;
          ws.sample_rate_hz = spec.sample_rate_hz;
          ws.word = word;
          ws.duration_s = sustained ? 1.0 : rng.Uniform(0.16, 0.24);
          ws.f0_hz = f0 * rng.Uniform(0.97, 1.03);
          ws.epsilon = eps;
          ws.shimmer_high = 1.0;
          ws.shimmer_low = 1.0 - depth;
          ws.amplitude = 0.5 * rng.Uniform(0.8, 1.0);
          ws.segment_s = 0.06;
          const auto segments =
              static_cast<std::size_t>(std::ceil(ws.duration_s / ws.segment_s));
          ws.formant_offsets_hz = ScatterOffsets(lexicon[static_cast<std::size_t>(word)],
                                                 sev.formant_scatter_hz, segments, &rng);
          ws.seed = DeriveSeed(spec.seed, utt.record.utt_id + "#" + std::to_string(w));
          const auto audio = SynthSignal(ws);
          utt.audio.samples.insert(utt.audio.samples.end(), audio.samples.begin(),
                                   audio.samples.end());
          if (!transcript.empty()) transcript += ' ';
          transcript += ToyWordChar(word);
          if (w + 1 < count) AppendSilence(rng.Uniform(0.10, 0.18) * sev.pause_scale, &utt.audio);
        }
        AppendSilence(sustained ? 0.2 : 0.15, &utt.audio);
        utt.record.reference = transcript;
        out.push_back(std::move(utt));
      }
    }
  }
  return out;
}

std::vector<UtteranceRecord> WriteSynthCorpus(const CorpusSpec &spec,
                                              const std::filesystem::path &out_dir) {
  std::filesystem::create_directories(out_dir / "wav");
  const auto corpus = SynthCorpus(spec);
  std::vector<UtteranceRecord> records;
  records.reserve(corpus.size());
  for (const auto &utt : corpus) {
    WriteWav(out_dir / utt.record.audio_path, utt.audio, WavEncoding::kPcm16);
    records.push_back(utt.record);
  }
  WriteManifest(out_dir / "manifest.jsonl", records);
  return records;
}

}  // namespace hdspeech
