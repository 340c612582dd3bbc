// src/pipeline.cc

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

#include "hdspeech/pipeline.h"

#include <algorithm>
#include <charconv>
#include <exception>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "hdspeech/error.h"
#include "hdspeech/extract.h"
#include "hdspeech/scoring.h"
#include "hdspeech/synth.h"
#include "hdspeech/trainer.h"
#include "json.hpp"

namespace hdspeech {

using nlohmann::json;

namespace {

void WriteText(const fs::path &path, const std::string &text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) Fail(ErrorKind::Io, "cannot write " + path.string());
  out << text;
  if (!out) Fail(ErrorKind::Io, "write failed for " + path.string());
}

std::string ReadText(const fs::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(ErrorKind::Io, "cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string Shortest(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

fs::path ResolveAudio(const fs::path &manifest, const std::string &audio_path) {
  const fs::path p(audio_path);
  return p.is_absolute() ? p : manifest.parent_path() / p;
}

std::vector<UtteranceRecord> SortedManifest(const fs::path &manifest) {
  auto records = LoadManifest(manifest);
  if (records.empty())
    Fail(ErrorKind::EmptyManifest, "manifest " + manifest.string() + " has no records");
  std::sort(records.begin(), records.end(),
            [](const auto &a, const auto &b) { return a.utt_id < b.utt_id; });
  return records;
}

json OptionalNumber(const std::optional<double> &v) {
  return v ? json(*v) : json(nullptr);
}

// Runs fn(i) for i in [0, n) in parallel, rethrowing the first failure in
// index order after the loop.
template <typename Fn>
void ParallelFor(std::size_t n, Fn &&fn) {
  std::vector<std::exception_ptr> errors(n);
  const auto count = static_cast<long>(n);
#pragma omp parallel for schedule(dynamic, 1)
  for (long k = 0; k < count; ++k) {
    try {
      fn(static_cast<std::size_t>(k));
    } catch (...) {
      errors[static_cast<std::size_t>(k)] = std::current_exception();
    }
  }
  for (const auto &e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace

void WriteResolvedConfig(const PipelineConfig &cfg, const std::string &command,
                         const fs::path &out_dir) {
  fs::create_directories(out_dir);
  WriteText(out_dir / (command + ".resolved.cfg"), cfg.Resolved());
}

std::size_t CmdSynth(const PipelineConfig &cfg, const fs::path &out_dir) {
  fs::create_directories(out_dir);
  const auto records = WriteSynthCorpus(cfg.Corpus(), out_dir);
  WriteResolvedConfig(cfg, "synth", out_dir);
  return records.size();
}

std::string BiomarkerRowToJson(const BiomarkerRow &row) {
  json features = json::object();
  json missing = json::array();
  for (std::size_t k = 0; k < kNumFeatures; ++k) {
    const std::string name(FeatureName(static_cast<Feature>(k)));
    features[name] = OptionalNumber(row.vector.values[k]);
    if (!row.vector.values[k]) missing.push_back(name);
  }
  json obj = {{"utt_id", row.utt_id},
              {"speaker_id", row.speaker_id},
              {"cohort", std::string(CohortName(row.cohort))},
              {"features", features},
              {"missing", missing},
              {"notes", row.notes}};
  return obj.dump();
}

std::vector<BiomarkerRow> LoadBiomarkers(const fs::path &path) {
  std::istringstream in(ReadText(path));
  std::vector<BiomarkerRow> rows;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const json obj = json::parse(line);
      BiomarkerRow row;
      row.utt_id = obj.at("utt_id").get<std::string>();
      row.speaker_id = obj.at("speaker_id").get<std::string>();
      row.cohort = ParseCohort(obj.at("cohort").get<std::string>());
      const auto &f = obj.at("features");
      for (std::size_t k = 0; k < kNumFeatures; ++k) {
        const auto &v = f.at(std::string(FeatureName(static_cast<Feature>(k))));
        if (!v.is_null()) row.vector.values[k] = v.get<double>();
      }
      if (obj.contains("notes")) row.notes = obj["notes"].get<std::vector<std::string>>();
      rows.push_back(std::move(row));
    } catch (const json::exception &e) {
      Fail(ErrorKind::ParseError, path.filename().string() + " line " +
                                      std::to_string(n) + ": " + e.what());
    }
  }
  return rows;
}

ExtractSummary CmdExtract(const PipelineConfig &cfg, const fs::path &manifest,
                          const fs::path &out_dir) {
  const auto records = SortedManifest(manifest);
  std::vector<Extraction> results(records.size());
  ParallelFor(records.size(), [&](std::size_t i) {
    results[i] = ExtractBiomarkersFromFile(ResolveAudio(manifest, records[i].audio_path),
                                           cfg.extract);
  });
  ExtractSummary summary;
  summary.n_utterances = records.size();
  std::string text;
  for (std::size_t i = 0; i < records.size(); ++i) {
    BiomarkerRow row{records[i].utt_id, records[i].speaker_id, records[i].cohort,
                     results[i].vector, results[i].notes};
    text += BiomarkerRowToJson(row) + "\n";
    if (row.vector.Complete()) ++summary.n_complete;
    const bool none = std::none_of(row.vector.values.begin(), row.vector.values.end(),
                                   [](const auto &v) { return v.has_value(); });
    if (none) ++summary.n_failed;
  }
  fs::create_directories(out_dir);
  WriteText(out_dir / "biomarkers.jsonl", text);
  WriteResolvedConfig(cfg, "extract", out_dir);
  if (summary.n_failed == summary.n_utterances)
    Fail(ErrorKind::ExtractionFailed,
         "all " + std::to_string(summary.n_utterances) + " utterances failed");
  return summary;
}

SplitAssignment CmdSplit(const PipelineConfig &cfg, const fs::path &manifest,
                         const fs::path &out_dir) {
  const auto records = SortedManifest(manifest);
  const auto split = SplitSpeakers(records, cfg.SplitSeed());
  fs::create_directories(out_dir);
  WriteText(out_dir / "split.json", SplitToJson(split));
  WriteResolvedConfig(cfg, "split", out_dir);
  return split;
}

std::size_t CmdLabels(const PipelineConfig &cfg, const fs::path &biomarkers,
                      const fs::path &split_path, const fs::path &out_dir) {
  auto rows = LoadBiomarkers(biomarkers);
  std::sort(rows.begin(), rows.end(),
            [](const auto &a, const auto &b) { return a.utt_id < b.utt_id; });
  const auto split = SplitFromJson(ReadText(split_path));
  std::vector<LabeledVector> train;
  for (const auto &r : rows)
    if (split.Of(r.speaker_id) == Split::kTrain)
      train.push_back({r.utt_id, r.vector, r.cohort});
  const ControlStats stats = FitControlStats(train);

  std::string text;
  for (const auto &r : rows) {
    const auto labels = MakeLabels(r.vector, stats, cfg.bin_edge);
    json z = json::object(), bins = json::object(), fam = json::object();
    for (std::size_t k = 0; k < kNumFeatures; ++k) {
      const std::string name(FeatureName(static_cast<Feature>(k)));
      z[name] = OptionalNumber(labels.z[k]);
      bins[name] = labels.bins[k] ? json(std::string(BinName(*labels.bins[k]))) : json(nullptr);
    }
    for (Family f : kAllFamilies) {
      const auto &c = labels.family_classes[FamilyIndex(f)];
      fam[std::string(FamilyName(f))] = c ? json(*c) : json(nullptr);
    }
    json obj = {{"utt_id", r.utt_id},
                {"speaker_id", r.speaker_id},
                {"cohort", std::string(CohortName(r.cohort))},
                {"split", std::string(SplitName(split.Of(r.speaker_id)))},
                {"z", z},
                {"bins", bins},
                {"family_classes", fam}};
    text += obj.dump() + "\n";
  }
  json st = json::object();
  for (std::size_t k = 0; k < kNumFeatures; ++k)
    st[std::string(FeatureName(static_cast<Feature>(k)))] = {{"mean", stats.mean[k]},
                                                             {"sd", stats.sd[k]}};
  json stats_obj = {{"features", st}, {"control_utt_ids", stats.utt_ids}};
  fs::create_directories(out_dir);
  WriteText(out_dir / "labels.jsonl", text);
  WriteText(out_dir / "control_stats.json", stats_obj.dump(2) + "\n");
  WriteResolvedConfig(cfg, "labels", out_dir);
  return rows.size();
}

std::vector<LabelRow> LoadLabels(const fs::path &path) {
  std::istringstream in(ReadText(path));
  std::vector<LabelRow> rows;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const json obj = json::parse(line);
      LabelRow row;
      row.utt_id = obj.at("utt_id").get<std::string>();
      for (std::size_t k = 0; k < kNumFeatures; ++k) {
        const std::string name(FeatureName(static_cast<Feature>(k)));
        const auto &z = obj.at("z").at(name);
        if (!z.is_null()) row.labels.z[k] = z.get<double>();
        const auto &b = obj.at("bins").at(name);
        if (!b.is_null()) {
          const auto s = b.get<std::string>();
          for (Bin bin : {Bin::kLow, Bin::kMedium, Bin::kHigh})
            if (BinName(bin) == s) row.labels.bins[k] = bin;
        }
      }
      for (Family f : kAllFamilies) {
        const auto &c = obj.at("family_classes").at(std::string(FamilyName(f)));
        if (!c.is_null()) row.labels.family_classes[FamilyIndex(f)] = c.get<int>();
      }
      rows.push_back(std::move(row));
    } catch (const json::exception &e) {
      Fail(ErrorKind::ParseError, path.filename().string() + " line " +
                                      std::to_string(n) + ": " + e.what());
    }
  }
  return rows;
}

void CmdScore(const PipelineConfig &cfg, const fs::path &manifest,
              const ScoreOptions &opts, const fs::path &out_dir) {
  auto records = SortedManifest(manifest);
  if (opts.split) {
    const auto split = SplitFromJson(ReadText(*opts.split));
    std::erase_if(records, [&](const UtteranceRecord &r) {
      return split.Of(r.speaker_id) != Split::kTest;
    });
    if (records.empty()) Fail(ErrorKind::EmptyManifest, "no test-split utterances");
  }
  // model -> utt_id -> hypothesis
  std::map<std::string, std::map<std::string, std::string>> hyps;
  for (const auto &r : records)
    if (r.hypothesis) hyps["manifest"][r.utt_id] = *r.hypothesis;
  if (opts.hypotheses) {
    std::istringstream in(ReadText(*opts.hypotheses));
    for (auto &h : ParseHypotheses(in)) hyps[h.model][h.utt_id] = std::move(h.hypothesis);
  }
  if (hyps.empty())
    Fail(ErrorKind::MissingHypothesis, "no hypotheses in the manifest or a hypotheses file");

  std::vector<ScoreRecord> scored;
  std::string missing;
  for (const auto &[model, by_utt] : hyps)
    for (const auto &r : records) {
      auto it = by_utt.find(r.utt_id);
      if (it == by_utt.end()) {
        missing += (missing.empty() ? "" : ", ") + model + "/" + r.utt_id;
        continue;
      }
      scored.push_back({r.utt_id, model, r.cohort, r.reference, it->second});
    }
  if (!missing.empty()) Fail(ErrorKind::MissingHypothesis, "no hypothesis for " + missing);

  const auto reports = Score(scored);
  std::vector<DeltaRow> deltas;
  const std::string baseline =
      opts.baseline_model.empty() ? cfg.baseline_model : opts.baseline_model;
  if (!baseline.empty()) {
    if (!hyps.count(baseline))
      Fail(ErrorKind::CohortMismatch, "baseline model '" + baseline + "' has no reports");
    for (const auto &[model, unused] : hyps) {
      if (model == baseline) continue;
      const auto rows = DeltaReport(reports, baseline, model);
      deltas.insert(deltas.end(), rows.begin(), rows.end());
    }
  }
  fs::create_directories(out_dir);
  WriteText(out_dir / "score.csv", ReportsToCsv(reports));
  WriteText(out_dir / "score.json", ReportsToJson(reports));
  if (!baseline.empty()) {
    WriteText(out_dir / "delta.csv", DeltasToCsv(deltas));
    WriteText(out_dir / "delta.json", DeltasToJson(deltas));
  }
  PipelineConfig resolved = cfg;
  resolved.baseline_model = baseline;
  WriteResolvedConfig(resolved, "score", out_dir);
}

TrainSummary CmdTrainToy(const PipelineConfig &cfg, const fs::path &manifest,
                         const TrainToyOptions &opts, const fs::path &out_dir) {
  const auto records = SortedManifest(manifest);
  ToyEncoderConfig enc = cfg.encoder;
  enc.frame = cfg.extract.frame;
  enc.seed = cfg.TrainSeed();
  enc.Validate();
  const Family family = cfg.loss.active_family;

  std::optional<SplitAssignment> split;
  if (opts.split) split = SplitFromJson(ReadText(*opts.split));
  std::map<std::string, int> family_label;
  if (family != Family::kNone) {
    if (!opts.labels)
      Fail(ErrorKind::InvalidConfig, "family '" + std::string(FamilyName(family)) +
                                         "' needs a labels file");
    for (const auto &row : LoadLabels(*opts.labels)) {
      const auto &c = row.labels.family_classes[FamilyIndex(family)];
      if (c) family_label[row.utt_id] = *c;
    }
  }

  std::vector<const UtteranceRecord *> train_recs, eval_recs;
  for (const auto &r : records) {
    const Split s = split ? split->Of(r.speaker_id) : Split::kTrain;
    if (s == Split::kTrain) train_recs.push_back(&r);
    if (!split || s == Split::kTest) eval_recs.push_back(&r);
  }
  if (train_recs.empty()) Fail(ErrorKind::EmptyManifest, "no training utterances");

  auto features_of = [&](const UtteranceRecord &r) {
    return ToyFeatures(LoadWav(ResolveAudio(manifest, r.audio_path)), enc);
  };
  TrainBatch batch(train_recs.size());
  ParallelFor(train_recs.size(), [&](std::size_t i) {
    const auto &r = *train_recs[i];
    Utterance &u = batch[i];
    u.features = features_of(r);
    u.mask.assign(static_cast<std::size_t>(u.features.rows()), 1);
    u.targets = EncodeTranscript(enc, r.reference);
    auto it = family_label.find(r.utt_id);
    if (it != family_label.end()) u.family_label = it->second;
  });

  ToyModel model = InitToyModel(enc, family);
  OptimizerState opt;
  opt.learning_rate = cfg.learning_rate;
  std::string curve = "step,total,asr,bio\n";
  TrainSummary summary;
  summary.n_train = batch.size();
  for (int step = 0; step < cfg.train_steps; ++step) {
    const auto loss = TrainStep(&model, batch, cfg.loss, &opt);
    if (step == 0) summary.initial_asr = loss.asr;
    curve += std::to_string(step) + "," + Shortest(loss.total) + "," + Shortest(loss.asr) +
             "," + Shortest(loss.bio) + "\n";
  }
  const auto final_loss = ComputeLossAndGradients(model, batch, cfg.loss, nullptr);
  summary.final_asr = final_loss.asr;
  if (cfg.train_steps == 0) summary.initial_asr = final_loss.asr;
  curve += std::to_string(cfg.train_steps) + "," + Shortest(final_loss.total) + "," +
           Shortest(final_loss.asr) + "," + Shortest(final_loss.bio) + "\n";

  std::vector<std::string> decoded(eval_recs.size());
  ParallelFor(eval_recs.size(), [&](std::size_t i) {
    const Eigen::MatrixXd hidden = Encode(model, features_of(*eval_recs[i]));
    decoded[i] = DecodeTranscript(enc, GreedyDecode(CtcLogits(model, hidden)));
  });
  const std::string model_name = "toy-" + std::string(FamilyName(family));
  std::string hyp_text;
  for (std::size_t i = 0; i < eval_recs.size(); ++i)
    hyp_text += json({{"utt_id", eval_recs[i]->utt_id},
                      {"model", model_name},
                      {"hypothesis", decoded[i]}})
                    .dump() +
                "\n";
  summary.n_decoded = eval_recs.size();

  fs::create_directories(out_dir);
  WriteText(out_dir / "checkpoint.json", ModelToJson(model));
  WriteText(out_dir / "loss.csv", curve);
  WriteText(out_dir / "hypotheses.jsonl", hyp_text);
  WriteResolvedConfig(cfg, "train-toy", out_dir);
  return summary;
}

}  // namespace hdspeech
