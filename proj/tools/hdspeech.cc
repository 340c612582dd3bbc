// tools/hdspeech.cc

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

// Command-line front end.
//
//   hdspeech synth     --out DIR [--config F] [--seed N]
//   hdspeech extract   --manifest M --out DIR
//   hdspeech split     --manifest M --out DIR [--seed N]
//   hdspeech labels    --biomarkers B --split S --out DIR
//   hdspeech score     --manifest M [--hypotheses H] [--split S]
//                      [--baseline-model NAME] --out DIR
//   hdspeech train-toy --manifest M [--labels L] [--split S]
//                      [--family none|prosody|phonation|articulation] --out DIR
//
// Exit codes: 0 success, 1 usage, 2 data error, 3 internal error.

#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "hdspeech/config.h"
#include "hdspeech/error.h"
#include "hdspeech/pipeline.h"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitInternal = 3;

}  // namespace

int main(int argc, char **argv) {
  using namespace hdspeech;
  CLI::App app{"Biomarker extraction, splitting, labels, toy training and WER scoring"};
  app.require_subcommand(1);

  std::string config_path, out_dir, manifest, biomarkers, split_path, hypotheses,
      labels, baseline, family;
  std::optional<std::uint64_t> seed;

  auto add_common = [&](CLI::App *sub) {
    sub->add_option("--config", config_path, "key = value configuration file");
    sub->add_option("--out", out_dir, "output directory")->required();
    sub->add_option("--seed", seed, "overrides the config seed");
  };
  auto *synth = app.add_subcommand("synth", "write the synthetic corpus");
  add_common(synth);
  auto *extract = app.add_subcommand("extract", "biomarkers per utterance");
  add_common(extract);
  extract->add_option("--manifest", manifest, "manifest JSONL")->required();
  auto *split = app.add_subcommand("split", "speaker-level stratified split");
  add_common(split);
  split->add_option("--manifest", manifest, "manifest JSONL")->required();
  auto *lab = app.add_subcommand("labels", "control-normalized biomarker labels");
  add_common(lab);
  lab->add_option("--biomarkers", biomarkers, "biomarkers JSONL from extract")->required();
  lab->add_option("--split", split_path, "split JSON")->required();
  auto *score = app.add_subcommand("score", "WER reports");
  add_common(score);
  score->add_option("--manifest", manifest, "manifest JSONL")->required();
  score->add_option("--hypotheses", hypotheses, "hypotheses JSONL");
  score->add_option("--split", split_path, "score test-split speakers only");
  score->add_option("--baseline-model", baseline, "model the deltas are taken against");
  auto *train = app.add_subcommand("train-toy", "toy joint ASR + biomarker training");
  add_common(train);
  train->add_option("--manifest", manifest, "manifest JSONL")->required();
  train->add_option("--labels", labels, "labels JSONL");
  train->add_option("--split", split_path, "split JSON");
  train->add_option("--family", family, "auxiliary family")
      ->check(CLI::IsMember({"none", "prosody", "phonation", "articulation"}));
  app.set_version_flag("--version", "hdspeech 1.0");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    PipelineConfig cfg;
    if (!config_path.empty()) cfg = PipelineConfig::Load(config_path);
    if (seed) cfg.seed = *seed;
    if (!family.empty()) cfg.loss.active_family = ParseFamily(family);

    if (synth->parsed()) {
      const auto n = CmdSynth(cfg, out_dir);
      std::printf("synth: %zu utterances\n", n);
    } else if (extract->parsed()) {
      const auto s = CmdExtract(cfg, manifest, out_dir);
      std::printf("extract: %zu utterances, %zu complete, %zu failed\n", s.n_utterances,
                  s.n_complete, s.n_failed);
    } else if (split->parsed()) {
      const auto s = CmdSplit(cfg, manifest, out_dir);
      std::printf("split: %zu speakers\n", s.speaker_split.size());
    } else if (lab->parsed()) {
      const auto n = CmdLabels(cfg, biomarkers, split_path, out_dir);
      std::printf("labels: %zu rows\n", n);
    } else if (score->parsed()) {
      ScoreOptions opts;
      if (!hypotheses.empty()) opts.hypotheses = hypotheses;
      if (!split_path.empty()) opts.split = split_path;
      opts.baseline_model = baseline;
      CmdScore(cfg, manifest, opts, out_dir);
      std::printf("score: wrote %s/score.csv\n", out_dir.c_str());
    } else if (train->parsed()) {
      TrainToyOptions opts;
      if (!labels.empty()) opts.labels = labels;
      if (!split_path.empty()) opts.split = split_path;
      const auto s = CmdTrainToy(cfg, manifest, opts, out_dir);
      std::printf("train-toy: %zu utterances, asr loss %.4f -> %.4f, %zu decoded\n",
                  s.n_train, s.initial_asr, s.final_asr, s.n_decoded);
    }
    return 0;
  } catch (const Error &e) {
    std::fprintf(stderr, "hdspeech: %s\n", e.what());
    return e.kind() == ErrorKind::InvalidConfig ? kExitUsage : kExitData;
  } catch (const std::exception &e) {
    std::fprintf(stderr, "hdspeech: internal error: %s\n", e.what());
    return kExitInternal;
  }
}
