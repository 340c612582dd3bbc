// tests/acceptance.cc

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

// Acceptance run: one PASS/FAIL line per criterion, at the stated
// tolerances and time budgets. Exit status is nonzero if any line fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "hdspeech/articulation.h"
#include "hdspeech/config.h"
#include "hdspeech/corpus.h"
#include "hdspeech/extract.h"
#include "hdspeech/labels.h"
#include "hdspeech/phonation.h"
#include "hdspeech/pipeline.h"
#include "hdspeech/prosody.h"
#include "hdspeech/rng.h"
#include "hdspeech/scoring.h"
#include "hdspeech/synth.h"
#include "hdspeech/trainer.h"
#include "oracles.h"
#include "test_util.h"

using namespace hdspeech;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void Require(bool ok, const std::string &what) {
    if (!ok) {
      if (pass) detail.clear();
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
  void Note(const std::string &what) {
    if (pass) detail += (detail.empty() ? "" : "; ") + what;
  }
};

std::string Fmt(const char *fmt, double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), fmt, x);
  return buf;
}

std::string Slurp(const fs::path &p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// ---- 1 ----
Outcome ScoringComposition() {
  Outcome o;
  // Per-type rates of the adapted model row, from counts over 10000 words.
  const auto r = ReportFromCounts("hd", std::nullopt, 47, 10000, 209, 129, 157);
  o.Require(FormatPercent(r.sub_rate) == "2.09" && FormatPercent(r.del_rate) == "1.29" &&
                FormatPercent(r.ins_rate) == "1.57",
            "rates do not match 2.09/1.29/1.57");
  o.Require(FormatPercent(r.wer) == "4.95", "WER " + FormatPercent(r.wer) + " != 4.95");
  o.Require(r.wer == r.sub_rate + r.del_rate + r.ins_rate, "WER is not the sum of the rates");
  // The other auxiliary rows compose the same way.
  const double rows[3][4] = {{6.11, 2.13, 2.53, 1.45}, {6.07, 1.92, 2.77, 1.38},
                             {6.44, 1.94, 3.21, 1.29}};
  for (const auto &row : rows) {
    const auto x = ReportFromCounts("v", std::nullopt, 47, 10000,
                                    static_cast<std::size_t>(std::lround(row[1] * 100)),
                                    static_cast<std::size_t>(std::lround(row[2] * 100)),
                                    static_cast<std::size_t>(std::lround(row[3] * 100)));
    o.Require(FormatPercent(x.wer) == Fmt("%.2f", row[0]), "row WER " + FormatPercent(x.wer));
  }
  // Error-composition rows: the published shares, and shares recomputed
  // from counts proportional to them.
  const double shares[5][3] = {{17.99, 9.35, 72.66}, {13.29, 6.68, 80.04},
                               {16.56, 9.18, 74.27}, {41.90, 29.68, 28.43},
                               {43.30, 22.85, 33.85}};
  double worst = 0.0;
  for (const auto &s : shares) {
    worst = std::max(worst, std::abs(s[0] + s[1] + s[2] - 100.0));
    const auto x = ReportFromCounts(
        "b", std::nullopt, 47, 100000, static_cast<std::size_t>(std::lround(s[0] * 100)),
        static_cast<std::size_t>(std::lround(s[1] * 100)),
        static_cast<std::size_t>(std::lround(s[2] * 100)));
    o.Require(std::abs(x.sub_share - s[0]) <= 0.01 && std::abs(x.del_share - s[1]) <= 0.01 &&
                  std::abs(x.ins_share - s[2]) <= 0.01,
              "recomputed shares drift from the table");
    const double formatted = std::stod(FormatPercent(x.sub_share)) +
                             std::stod(FormatPercent(x.del_share)) +
                             std::stod(FormatPercent(x.ins_share));
    worst = std::max(worst, std::abs(formatted - 100.0));
  }
  o.Require(worst <= 0.02 + 1e-9, "share sum off by " + Fmt("%.4f", worst));
  o.Note("WER " + FormatPercent(r.wer) + ", max |share sum - 100| " + Fmt("%.2f", worst));
  return o;
}

// ---- 2 ----
Outcome AlignmentOracle() {
  Outcome o;
  const std::vector<std::string> alphabet = {"a", "b", "c"};
  std::vector<std::vector<std::string>> seqs;
  std::vector<std::vector<std::uint8_t>> codes;
  for (std::size_t n = 0; n <= 6; ++n) {
    std::size_t count = 1;
    for (std::size_t k = 0; k < n; ++k) count *= 3;
    for (std::size_t c = 0; c < count; ++c) {
      std::vector<std::string> s(n);
      std::vector<std::uint8_t> code(n);
      for (std::size_t k = 0, x = c; k < n; ++k, x /= 3) {
        s[k] = alphabet[x % 3];
        code[k] = static_cast<std::uint8_t>(x % 3);
      }
      seqs.push_back(std::move(s));
      codes.push_back(std::move(code));
    }
  }
  const oracle::MatchingEnumerator oracle(6);
  std::size_t pairs = 0, mismatches = 0, bad_replay = 0;
  for (std::size_t i = 0; i < seqs.size(); ++i)
    for (std::size_t j = 0; j < seqs.size(); ++j) {
      const auto r = Align(seqs[i], seqs[j]);
      ++pairs;
      if (r.errors() != oracle.Distance<std::uint8_t>(codes[i], codes[j])) ++mismatches;
      std::size_t nr = 0, nh = 0;
      for (const auto &p : r.ops) {
        if (p.op != EditOp::kIns && (nr >= seqs[i].size() || p.ref != seqs[i][nr++])) ++bad_replay;
        if (p.op != EditOp::kDel && (nh >= seqs[j].size() || p.hyp != seqs[j][nh++])) ++bad_replay;
      }
      if (nr != seqs[i].size() || nh != seqs[j].size()) ++bad_replay;
    }
  o.Require(pairs >= 500000, "only " + std::to_string(pairs) + " pairs");
  o.Require(mismatches == 0, std::to_string(mismatches) + " distance mismatches");
  o.Require(bad_replay == 0, std::to_string(bad_replay) + " replay failures");
  o.Note(std::to_string(pairs) + " pairs, 0 mismatches");
  return o;
}

// ---- 3 ----
Outcome JitterClosedForm() {
  Outcome o;
  double worst_e2e = 0.0, worst_seq = 0.0;
  for (double eps : {0.005, 0.01, 0.02, 0.05}) {
    const double expect = eps / (1.0 + eps / 2.0);
    SynthSpec s;
    s.kind = SynthKind::kJitterTone;
    s.f0_hz = 100.0;
    s.epsilon = eps;
    s.duration_s = 2.0;
    s.amplitude = 0.8;
    const auto a = SynthSignal(s);
    const double j = JitterLocal(ExtractPitchPeriods(a, TrackF0(a)));
    worst_e2e = std::max(worst_e2e, std::abs(j - expect) / expect);

    std::vector<double> t;
    for (int i = 0; i < 2000; ++i) t.push_back(i % 2 ? 0.01 * (1.0 + eps) : 0.01);
    worst_seq = std::max(worst_seq,
                         std::abs(JitterLocal(PitchPeriodSequence::FromPeriods(t)) - expect));
  }
  o.Require(worst_e2e <= 0.10, "end-to-end relative error " + Fmt("%.4f", worst_e2e));
  o.Require(worst_seq < 1e-6, "sequence error " + Fmt("%.3g", worst_seq));
  o.Note("max end-to-end rel. error " + Fmt("%.4f", worst_e2e) + ", max sequence error " +
         Fmt("%.2g", worst_seq));
  return o;
}

// ---- 4 ----
Outcome PauseRatioEquation() {
  Outcome o;
  VadTrack v;
  v.v = {1, 1, 0, 0, 0, 0, 0, 0, 1, 1};
  const double pr = PauseRatio(v);
  o.Require(pr == 0.6, "V example gives " + Fmt("%.17g", pr));

  SynthSpec s;
  s.kind = SynthKind::kSilence;
  const auto silent = ExtractBiomarkers(SynthSignal(s)).vector[Feature::kPauseRatio];
  o.Require(silent && *silent == 1.0, "silence pause ratio is not 1");
  s.kind = SynthKind::kTone;
  s.f0_hz = 200.0;
  const auto tone = ExtractBiomarkers(SynthSignal(s)).vector[Feature::kPauseRatio];
  o.Require(tone && *tone <= 0.1, "tone pause ratio " + Fmt("%.4f", tone.value_or(-1)));
  o.Note("example " + Fmt("%.1f", pr) + ", silence " + Fmt("%.1f", silent.value_or(-1)) +
         ", tone " + Fmt("%.4f", tone.value_or(-1)));
  return o;
}

// ---- 5 ----
Outcome FormantOracle() {
  Outcome o;
  for (auto [f1, f2] : {std::pair{700.0, 1200.0}, std::pair{300.0, 2300.0}}) {
    SynthSpec s;
    s.kind = SynthKind::kPulseTrainFormant;
    s.f0_hz = 100.0;
    s.formants = {{f1, f2}};
    const auto a = SynthSignal(s);
    const auto t = TrackFormants(a, TrackF0(a));
    const double m1 = testutil::Median(t.f1_hz), m2 = testutil::Median(t.f2_hz);
    o.Require(std::abs(m1 - f1) <= 50.0, "F1 " + Fmt("%.1f", m1) + " vs " + Fmt("%.0f", f1));
    o.Require(std::abs(m2 - f2) <= 75.0, "F2 " + Fmt("%.1f", m2) + " vs " + Fmt("%.0f", f2));
    o.Note("(" + Fmt("%.0f", f1) + "," + Fmt("%.0f", f2) + ") -> (" + Fmt("%.1f", m1) + "," +
           Fmt("%.1f", m2) + ")");
  }
  FormantTrack flat;
  flat.f1_hz.assign(50, 500.0);
  flat.f2_hz.assign(50, 1500.0);
  flat.frame_times_s.resize(50);
  const double vsa = VsaProxy(flat);
  o.Require(vsa == 0.0, "constant track VSA " + Fmt("%.3g", vsa));
  o.Note("constant VSA " + Fmt("%.1f", vsa));
  return o;
}

// ---- 6 ----
Outcome LabelConstruction() {
  Outcome o;
  int round_trip = 0;
  for (int cls = 0; cls < 27; ++cls) {
    const auto bins = DecodeFamilyClass(cls, 3);
    ControlStats stats;
    BiomarkerVector v;
    for (std::size_t k = 0; k < kNumFeatures; ++k) {
      stats.mean[k] = 10.0;
      stats.sd[k] = 2.0;
      v.values[k] = 10.0;
    }
    // Place each prosody feature in its bin, then recover the class.
    for (std::size_t k = 0; k < 3; ++k)
      v.values[k] = 10.0 + 2.0 * (static_cast<double>(bins[k]) - 1.0);
    const auto l = MakeLabels(v, stats);
    if (l.FamilyClass(Family::kProsody) == cls && EncodeFamilyClass(bins) == cls) ++round_trip;
  }
  o.Require(round_trip == 27, std::to_string(round_trip) + "/27 round trips");

  Rng rng(606);
  std::vector<LabeledVector> pop;
  for (int i = 0; i < 30; ++i) {
    LabeledVector lv{"c" + std::to_string(i), {}, Cohort::kControl};
    for (auto &x : lv.vector.values) x = rng.Uniform(0.0, 5.0);
    pop.push_back(lv);
  }
  const auto stats = FitControlStats(pop);
  BiomarkerVector mean;
  for (std::size_t k = 0; k < kNumFeatures; ++k) mean.values[k] = stats.mean[k];
  const auto ml = MakeLabels(mean, stats);
  bool all_medium = true;
  for (const auto &b : ml.bins) all_medium = all_medium && b == Bin::kMedium;
  o.Require(all_medium, "control mean is not all-medium");

  int invariant = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<LabeledVector> p;
    const int n = 2 + static_cast<int>(rng.Below(20));
    for (int i = 0; i < n; ++i) {
      LabeledVector lv{"c" + std::to_string(i), {}, Cohort::kControl};
      for (auto &x : lv.vector.values) x = rng.Gaussian();
      p.push_back(lv);
    }
    BiomarkerVector probe;
    for (auto &x : probe.values) x = 2.0 * rng.Gaussian();
    const double a = rng.Uniform(0.01, 100.0), b = rng.Uniform(-100.0, 100.0);
    auto q = p;
    for (auto &lv : q)
      for (auto &x : lv.vector.values) x = a * *x + b;
    auto moved = probe;
    for (auto &x : moved.values) x = a * *x + b;
    const auto l1 = MakeLabels(probe, FitControlStats(p));
    const auto l2 = MakeLabels(moved, FitControlStats(q));
    bool same = true;
    for (std::size_t k = 0; k < kNumFeatures; ++k) {
      same = same && std::abs(*l1.z[k] - *l2.z[k]) <= 1e-9 * std::max(1.0, std::abs(*l1.z[k]));
      // Bins may only differ for a z within rounding of an edge.
      if (std::abs(std::abs(*l1.z[k]) - 0.5) > 1e-9) same = same && l1.bins[k] == l2.bins[k];
    }
    invariant += same;
  }
  o.Require(invariant == 1000, std::to_string(invariant) + "/1000 affine cases invariant");
  o.Note("27/27 round trips, control mean all-medium, 1000/1000 affine cases");
  return o;
}

// ---- 7 ----
Outcome SplitContract() {
  Outcome o;
  Rng rng(707);
  int bad_disjoint = 0, bad_counts = 0, bad_determinism = 0;
  std::set<int> sizes_seen;
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<UtteranceRecord> recs;
    std::map<std::string, Cohort> cohort_of;
    std::array<int, 4> sizes{};
    for (std::size_t c = 0; c < 4; ++c) {
      sizes[c] = c == 0 ? 3 + trial % 48 : 3 + static_cast<int>(rng.Below(48));
      sizes_seen.insert(sizes[c]);
      for (int s = 0; s < sizes[c]; ++s) {
        const std::string spk = "c" + std::to_string(c) + "s" + std::to_string(s);
        cohort_of[spk] = kAllCohorts[c];
        for (int u = 0; u < 1 + static_cast<int>(rng.Below(3)); ++u) {
          UtteranceRecord r;
          r.speaker_id = spk;
          r.utt_id = spk + "u" + std::to_string(u);
          r.cohort = kAllCohorts[c];
          recs.push_back(r);
        }
      }
    }
    rng.Shuffle(recs.begin(), recs.end());
    const std::uint64_t seed = rng.NextU64();
    const auto a = SplitSpeakers(recs, seed);
    if (SplitSpeakers(recs, seed).speaker_split != a.speaker_split) ++bad_determinism;

    std::map<std::string, std::set<Split>> seen;
    for (const auto &r : recs) seen[r.speaker_id].insert(a.Of(r.speaker_id));
    for (const auto &[spk, splits] : seen) bad_disjoint += splits.size() != 1;
    if (a.speaker_split.size() != cohort_of.size()) ++bad_disjoint;

    std::map<Cohort, std::array<int, 3>> counts;
    for (const auto &[spk, s] : a.speaker_split)
      ++counts[cohort_of.at(spk)][static_cast<std::size_t>(s)];
    for (std::size_t c = 0; c < 4; ++c)
      for (std::size_t k = 0; k < 3; ++k)
        if (std::abs(counts[kAllCohorts[c]][k] - kSplitFractions[k] * sizes[c]) > 1.0)
          ++bad_counts;
  }
  o.Require(sizes_seen.size() == 48, "sweep did not cover 3..50");
  o.Require(bad_disjoint == 0, std::to_string(bad_disjoint) + " leakage cases");
  o.Require(bad_counts == 0, std::to_string(bad_counts) + " count violations");
  o.Require(bad_determinism == 0, std::to_string(bad_determinism) + " nondeterministic splits");
  o.Note("200 trials over sizes 3..50: disjoint, within +-1, deterministic");
  return o;
}

// ---- 8 ----
std::vector<std::vector<double>> Softmax(const Eigen::MatrixXd &logits) {
  std::vector<std::vector<double>> p(static_cast<std::size_t>(logits.cols()));
  for (Eigen::Index t = 0; t < logits.cols(); ++t) {
    const double mx = logits.col(t).maxCoeff();
    double z = 0.0;
    for (Eigen::Index k = 0; k < logits.rows(); ++k) z += std::exp(logits(k, t) - mx);
    for (Eigen::Index k = 0; k < logits.rows(); ++k)
      p[static_cast<std::size_t>(t)].push_back(std::exp(logits(k, t) - mx) / z);
  }
  return p;
}

void Randomize(Eigen::MatrixXd &m, Rng &rng, double scale) {
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = scale * rng.Gaussian();
}
void Randomize(Eigen::VectorXd &v, Rng &rng, double scale) {
  for (Eigen::Index i = 0; i < v.size(); ++i) v.data()[i] = scale * rng.Gaussian();
}

bool SameParams(const ToyModel &a, const ToyModel &b) {
  bool same = a.ctc_w == b.ctc_w && a.ctc_b == b.ctc_b;
  for (std::size_t l = 0; l < a.layers.size(); ++l) {
    const auto &x = a.layers[l], &y = b.layers[l];
    same = same && x.w == y.w && x.b == y.b && x.down == y.down && x.down_b == y.down_b &&
           x.up == y.up && x.up_b == y.up_b;
  }
  return same;
}

Outcome CtcAndGradients() {
  Outcome o;
  Rng rng(808);
  int cases = 0, ctc_bad = 0;
  double worst_ctc = 0.0;
  for (int t_len = 1; t_len <= 4; ++t_len)
    for (int v = 2; v <= 3; ++v)
      for (int l = 0; l <= 2; ++l) {
        int combos = 1;
        for (int i = 0; i < l; ++i) combos *= v - 1;
        for (int c = 0; c < combos; ++c) {
          std::vector<int> target(static_cast<std::size_t>(l));
          for (int i = 0, x = c; i < l; ++i, x /= (v - 1)) target[i] = 1 + x % (v - 1);
          for (int draw = 0; draw < 4; ++draw) {
            Eigen::MatrixXd logits = Eigen::MatrixXd::Zero(v, t_len);
            if (draw > 0) Randomize(logits, rng, 1.0 * draw);
            const std::vector<std::uint8_t> mask(static_cast<std::size_t>(t_len), 1);
            const double p = oracle::CtcPathEnumeration(Softmax(logits), target);
            ++cases;
            if (p == 0.0) {
              try {
                CtcLoss(logits, target, mask);
                ++ctc_bad;
              } catch (const Error &e) {
                ctc_bad += e.kind() != ErrorKind::InfeasibleTarget;
              }
              continue;
            }
            const double err = std::abs(CtcLoss(logits, target, mask).loss + std::log(p));
            worst_ctc = std::max(worst_ctc, err);
            ctc_bad += err >= 1e-9;
          }
        }
      }
  o.Require(ctc_bad == 0, std::to_string(ctc_bad) + "/" + std::to_string(cases) +
                              " CTC cases off the enumeration oracle");

  // Gradient check on a 2-utterance micro-batch.
  ToyEncoderConfig cfg;
  cfg.n_mels = 6;
  cfg.hidden_dim = 5;
  cfg.adapter_dim = 3;
  cfg.vocab = "ab";
  cfg.seed = 88;
  auto model = InitToyModel(cfg, Family::kArticulation);
  for (auto &layer : model.layers) {
    Randomize(layer.up, rng, 0.3);
    Randomize(layer.up_b, rng, 0.1);
    Randomize(layer.down_b, rng, 0.1);
  }
  Randomize(model.ctc_w, rng, 0.5);
  Randomize(model.ctc_b, rng, 0.2);
  Randomize(model.bio_w, rng, 0.5);
  auto utt = [&](int frames, std::vector<int> targets, int label) {
    Utterance u;
    u.features.resize(frames, cfg.n_mels);
    for (Eigen::Index i = 0; i < u.features.size(); ++i) u.features.data()[i] = rng.Gaussian();
    u.mask.assign(static_cast<std::size_t>(frames), 1);
    u.targets = std::move(targets);
    u.family_label = label;
    return u;
  };
  TrainBatch batch = {utt(6, {1, 2}, 2), utt(5, {2, 2}, 0)};
  const JointLossConfig jc{0.1, Family::kArticulation};
  auto grads = ToyGradients::ZerosLike(model);
  ComputeLossAndGradients(model, batch, jc, &grads);
  std::vector<std::pair<double *, const double *>> blocks;
  std::vector<Eigen::Index> sizes;
  auto add = [&](auto &p, const auto &g) {
    blocks.emplace_back(p.data(), g.data());
    sizes.push_back(p.size());
  };
  for (std::size_t l = 0; l < model.layers.size(); ++l) {
    add(model.layers[l].down, grads.layers[l].down);
    add(model.layers[l].down_b, grads.layers[l].down_b);
    add(model.layers[l].up, grads.layers[l].up);
    add(model.layers[l].up_b, grads.layers[l].up_b);
  }
  add(model.ctc_w, grads.ctc_w);
  add(model.ctc_b, grads.ctc_b);
  add(model.bio_w, grads.bio_w);
  add(model.bio_b, grads.bio_b);
  const auto loss = [&] { return ComputeLossAndGradients(model, batch, jc, nullptr).total; };
  double worst_grad = 0.0;
  std::size_t n_params = 0;
  for (std::size_t b = 0; b < blocks.size(); ++b)
    for (Eigen::Index i = 0; i < sizes[b]; ++i) {
      const double numeric = oracle::CentralDifference(blocks[b].first + i, 1e-4, loss);
      const double analytic = blocks[b].second[i];
      const double scale = std::max({std::abs(numeric), std::abs(analytic), 1e-6});
      worst_grad = std::max(worst_grad, std::abs(numeric - analytic) / scale);
      ++n_params;
    }
  o.Require(worst_grad < 1e-4, "gradient relative error " + Fmt("%.3g", worst_grad));

  // lambda = 0 against a model with no bio head at all.
  auto inert = InitToyModel(cfg, Family::kArticulation);
  auto plain = InitToyModel(cfg, Family::kNone);
  const auto bio_before = inert.bio_w;
  OptimizerState oa, ob;
  bool same_loss = true;
  for (int s = 0; s < 10; ++s) {
    const auto la = TrainStep(&inert, batch, {0.0, Family::kArticulation}, &oa);
    const auto lb = TrainStep(&plain, batch, {0.1, Family::kNone}, &ob);
    same_loss = same_loss && la.total == lb.total;
  }
  o.Require(same_loss && SameParams(inert, plain) && inert.bio_w == bio_before,
            "lambda = 0 run differs from the no-aux run");
  o.Note(std::to_string(cases) + " CTC cases (max err " + Fmt("%.2g", worst_ctc) + "), " +
         std::to_string(n_params) + " params max grad rel. err " + Fmt("%.2g", worst_grad) +
         ", lambda=0 bit-identical");
  return o;
}

// ---- 9 ----
TrainSummary RunPipeline(const PipelineConfig &cfg, const fs::path &dir) {
  CmdSynth(cfg, dir / "corpus");
  const auto manifest = dir / "corpus" / "manifest.jsonl";
  CmdExtract(cfg, manifest, dir / "bio");
  CmdSplit(cfg, manifest, dir / "split");
  CmdLabels(cfg, dir / "bio" / "biomarkers.jsonl", dir / "split" / "split.json", dir / "labels");
  TrainToyOptions topts;
  topts.labels = dir / "labels" / "labels.jsonl";
  topts.split = dir / "split" / "split.json";
  const auto summary = CmdTrainToy(cfg, manifest, topts, dir / "train");
  ScoreOptions sopts;
  sopts.hypotheses = dir / "train" / "hypotheses.jsonl";
  sopts.split = dir / "split" / "split.json";
  CmdScore(cfg, manifest, sopts, dir / "score");
  return summary;
}

Outcome EndToEnd() {
  Outcome o;
  const fs::path root = fs::temp_directory_path() / "hdspeech_acceptance_e2e";
  fs::remove_all(root);
  const auto cfg = PipelineConfig::Parse("train.family = prosody\n");
  const auto a = RunPipeline(cfg, root / "a");
  RunPipeline(cfg, root / "b");
  std::size_t files = 0, differing = 0;
  for (const auto &e : fs::recursive_directory_iterator(root / "a")) {
    if (!e.is_regular_file()) continue;
    ++files;
    const auto other = root / "b" / fs::relative(e.path(), root / "a");
    differing += !fs::exists(other) || Slurp(e.path()) != Slurp(other);
  }
  const double drop = 1.0 - a.final_asr / a.initial_asr;
  o.Require(differing == 0, std::to_string(differing) + "/" + std::to_string(files) +
                                " files differ between reruns");
  o.Require(drop >= 0.80, "CTC loss drop " + Fmt("%.1f%%", 100 * drop));
  o.Note(std::to_string(files) + " files byte-identical, CTC " + Fmt("%.2f", a.initial_asr) +
         " -> " + Fmt("%.2f", a.final_asr) + " (" + Fmt("%.1f%%", 100 * drop) + " drop)");
  fs::remove_all(root);
  return o;
}

// ---- 10 ----
Outcome SeverityMonotonicity() {
  Outcome o;
  const auto corpus = SynthCorpus(PipelineConfig().Corpus());
  std::vector<Extraction> ex(corpus.size());
#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < corpus.size(); ++i) ex[i] = ExtractBiomarkers(corpus[i].audio);
  std::array<double, 4> jitter{}, pause{};
  std::array<int, 4> nj{}, np{};
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto c = static_cast<std::size_t>(corpus[i].record.cohort);
    if (const auto &j = ex[i].vector[Feature::kJitterLocal]) {
      jitter[c] += *j;
      ++nj[c];
    }
    if (const auto &p = ex[i].vector[Feature::kPauseRatio]) {
      pause[c] += *p;
      ++np[c];
    }
  }
  std::string js, ps;
  bool monotone = true;
  for (std::size_t c = 0; c < 4; ++c) {
    jitter[c] /= nj[c];
    pause[c] /= np[c];
    js += (c ? " < " : "") + Fmt("%.4f", jitter[c]);
    ps += (c ? " < " : "") + Fmt("%.3f", pause[c]);
    if (c > 0) monotone = monotone && jitter[c] > jitter[c - 1] && pause[c] > pause[c - 1];
  }
  o.Require(monotone, "not monotone: jitter " + js + ", pause " + ps);
  o.Note("jitter " + js + "; pause_ratio " + ps);
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char *name;
    double budget_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "scoring composition identity", 1, ScoringComposition},
      {2, "alignment oracle equivalence", 60, AlignmentOracle},
      {3, "jitter closed form", 10, JitterClosedForm},
      {4, "pause ratio equation", 5, PauseRatioEquation},
      {5, "formant oracle", 10, FormantOracle},
      {6, "label construction", 5, LabelConstruction},
      {7, "split contract", 10, SplitContract},
      {8, "CTC oracle and gradients", 60, CtcAndGradients},
      {9, "end-to-end synthetic pipeline", 600, EndToEnd},
      {10, "severity monotonicity", 120, SeverityMonotonicity},
  };
  int failures = 0;
  for (const auto &c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception &e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.budget_s) o.Require(false, "over time budget");
    failures += !o.pass;
    std::printf("criterion %2d %-4s %s: %s [%.2f s / %.0f s]\n", c.id, o.pass ? "PASS" : "FAIL",
                c.name, o.detail.c_str(), secs, c.budget_s);
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
