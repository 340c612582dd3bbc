// src/config.cc

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

#include "hdspeech/config.h"

#include <charconv>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "hdspeech/error.h"
#include "hdspeech/rng.h"

namespace hdspeech {

namespace {

std::string Trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::string FormatDouble(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

[[noreturn]] void BadValue(std::string_view key, std::string_view value) {
  Fail(ErrorKind::InvalidConfig,
       "bad value '" + std::string(value) + "' for key '" + std::string(key) + "'");
}

double ToDouble(std::string_view key, std::string_view v) {
  double x = 0.0;
  const auto res = std::from_chars(v.data(), v.data() + v.size(), x);
  if (res.ec != std::errc() || res.ptr != v.data() + v.size()) BadValue(key, v);
  return x;
}

template <typename Int>
Int ToInt(std::string_view key, std::string_view v) {
  Int x = 0;
  const auto res = std::from_chars(v.data(), v.data() + v.size(), x);
  if (res.ec != std::errc() || res.ptr != v.data() + v.size()) BadValue(key, v);
  return x;
}

struct Entry {
  std::string key;
  std::function<std::string()> get;
  std::function<void(std::string_view)> set;
};

Entry Double(std::string key, double *p) {
  return {key, [p] { return FormatDouble(*p); },
          [p, key](std::string_view v) { *p = ToDouble(key, v); }};
}

template <typename Int>
Entry Integer(std::string key, Int *p) {
  return {key, [p] { return std::to_string(*p); },
          [p, key](std::string_view v) { *p = ToInt<Int>(key, v); }};
}

Entry String(std::string key, std::string *p) {
  return {key, [p] { return *p; }, [p](std::string_view v) { *p = std::string(v); }};
}

std::vector<Entry> Table(PipelineConfig *c) {
  auto &ex = c->extract;
  std::vector<Entry> t = {
      Integer("seed", &c->seed),
      Double("frame.frame_len_ms", &ex.frame.frame_len_ms),
      Double("frame.hop_ms", &ex.frame.hop_ms),
      {"frame.window", [c] { return std::string(WindowName(c->extract.frame.window)); },
       [c](std::string_view v) { c->extract.frame.window = ParseWindow(v); }},
      Double("vad.percentile", &ex.pitch.vad.percentile),
      Integer("vad.smooth_len", &ex.pitch.vad.smooth_len),
      Double("vad.tie_tolerance", &ex.pitch.vad.tie_tolerance),
      Double("pitch.fmin_hz", &ex.pitch.fmin_hz),
      Double("pitch.fmax_hz", &ex.pitch.fmax_hz),
      Double("pitch.voicing_threshold", &ex.pitch.voicing_threshold),
      Double("pitch.octave_cost", &ex.pitch.octave_cost),
      Double("cycles.search_fraction", &ex.cycles.search_fraction),
      Integer("cycles.min_cycles", &ex.cycles.min_cycles),
      Double("formant.preemphasis", &ex.formants.preemphasis),
      Integer("formant.lpc_order", &ex.formants.lpc_order),
      Double("formant.max_bandwidth_hz", &ex.formants.max_bandwidth_hz),
      Double("formant.min_frequency_hz", &ex.formants.min_frequency_hz),
      Double("formant.nyquist_margin_hz", &ex.formants.nyquist_margin_hz),
      Double("labels.bin_edge", &c->bin_edge),
      Integer("train.n_mels", &c->encoder.n_mels),
      Integer("train.n_layers", &c->encoder.n_layers),
      Integer("train.hidden_dim", &c->encoder.hidden_dim),
      Integer("train.adapter_dim", &c->encoder.adapter_dim),
      String("train.vocab", &c->encoder.vocab),
      Double("train.lambda", &c->loss.lambda),
      {"train.family", [c] { return std::string(FamilyName(c->loss.active_family)); },
       [c](std::string_view v) { c->loss.active_family = ParseFamily(v); }},
      Integer("train.steps", &c->train_steps),
      Double("train.learning_rate", &c->learning_rate),
      Integer("synth.n_speakers", &c->synth_speakers),
      Integer("synth.utterances_per_speaker", &c->synth_utterances_per_speaker),
      Integer("synth.sample_rate_hz", &c->synth_sample_rate_hz),
      {"synth.cohort_mix",
       [c] {
         std::string s;
         for (std::size_t i = 0; i < c->synth_cohort_mix.size(); ++i)
           s += (i ? "," : "") + std::to_string(c->synth_cohort_mix[i]);
         return s;
       },
       [c](std::string_view v) {
         c->synth_cohort_mix.clear();
         std::string item;
         std::istringstream is{std::string(v)};
         while (std::getline(is, item, ','))
           c->synth_cohort_mix.push_back(ToInt<int>("synth.cohort_mix", Trim(item)));
       }},
      String("score.baseline_model", &c->baseline_model),
  };
  std::sort(t.begin(), t.end(), [](const Entry &a, const Entry &b) { return a.key < b.key; });
  return t;
}

}  // namespace

std::uint64_t PipelineConfig::SplitSeed() const { return DeriveSeed(seed, "split"); }
std::uint64_t PipelineConfig::SynthSeed() const { return DeriveSeed(seed, "synth"); }
std::uint64_t PipelineConfig::TrainSeed() const { return DeriveSeed(seed, "train"); }

CorpusSpec PipelineConfig::Corpus() const {
  CorpusSpec spec;
  spec.n_speakers = synth_speakers;
  spec.cohort_mix = synth_cohort_mix;
  spec.utterances_per_speaker = synth_utterances_per_speaker;
  spec.sample_rate_hz = synth_sample_rate_hz;
  spec.seed = SynthSeed();
  return spec;
}

std::vector<std::string> PipelineConfig::Keys() {
  PipelineConfig c;
  std::vector<std::string> keys;
  for (const auto &e : Table(&c)) keys.push_back(e.key);
  return keys;
}

void PipelineConfig::Set(std::string_view key, std::string_view value) {
  for (auto &e : Table(this))
    if (e.key == key) {
      try {
        e.set(value);
      } catch (const Error &err) {
        if (err.kind() == ErrorKind::InvalidConfig) throw;
        BadValue(key, value);
      }
      return;
    }
  Fail(ErrorKind::InvalidConfig, "unknown key '" + std::string(key) + "'");
}

PipelineConfig PipelineConfig::Parse(std::string_view text) {
  PipelineConfig c;
  std::set<std::string> seen;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string body = Trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos)
      Fail(ErrorKind::InvalidConfig, "line " + std::to_string(n) + ": expected key = value");
    const std::string key = Trim(std::string_view(body).substr(0, eq));
    const std::string value = Trim(std::string_view(body).substr(eq + 1));
    if (!seen.insert(key).second)
      Fail(ErrorKind::InvalidConfig, "line " + std::to_string(n) + ": repeated key '" + key + "'");
    try {
      c.Set(key, value);
    } catch (const Error &e) {
      Fail(ErrorKind::InvalidConfig, "line " + std::to_string(n) + ": " + e.detail());
    }
  }
  c.Validate();
  return c;
}

void PipelineConfig::Validate() const {
  auto bad = [](const std::string &why) { Fail(ErrorKind::InvalidConfig, why); };
  if (!(loss.lambda >= 0.0)) bad("train.lambda must be >= 0");
  if (train_steps < 0) bad("train.steps must be >= 0");
  if (!(learning_rate > 0.0)) bad("train.learning_rate must be > 0");
  if (!(bin_edge > 0.0)) bad("labels.bin_edge must be > 0");
  if (!(extract.frame.frame_len_ms > 0.0 && extract.frame.hop_ms > 0.0))
    bad("frame lengths must be > 0");
  if (!(extract.pitch.fmin_hz > 0.0 && extract.pitch.fmin_hz < extract.pitch.fmax_hz))
    bad("pitch range must satisfy 0 < fmin < fmax");
  encoder.Validate();
}

PipelineConfig PipelineConfig::Load(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) Fail(ErrorKind::Io, "cannot open config " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return Parse(ss.str());
}

std::string PipelineConfig::Resolved() const {
  auto copy = *this;
  std::string out;
  for (const auto &e : Table(&copy)) out += e.key + " = " + e.get() + "\n";
  return out;
}

}  // namespace hdspeech
