// src/labels.cc

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

#include "hdspeech/labels.h"

#include <algorithm>
#include <cmath>

#include "hdspeech/error.h"

namespace hdspeech {

namespace {

constexpr std::array<Feature, 3> kProsody = {
    Feature::kSpeechRateProxy, Feature::kPauseRatio, Feature::kF0Sigma};
constexpr std::array<Feature, 3> kPhonation = {
    Feature::kJitterLocal, Feature::kShimmerLocal, Feature::kHnrDb};
constexpr std::array<Feature, 1> kArticulation = {Feature::kVsaProxy};

}  // namespace

std::string_view FeatureName(Feature f) {
  switch (f) {
    case Feature::kSpeechRateProxy: return "speech_rate_proxy";
    case Feature::kPauseRatio: return "pause_ratio";
    case Feature::kF0Sigma: return "f0_sigma";
    case Feature::kJitterLocal: return "jitter_local";
    case Feature::kShimmerLocal: return "shimmer_local";
    case Feature::kHnrDb: return "hnr_db";
    case Feature::kVsaProxy: return "vsa_proxy";
  }
  return "";
}

std::optional<Feature> ParseFeature(std::string_view name) {
  for (std::size_t i = 0; i < kNumFeatures; ++i)
    if (FeatureName(static_cast<Feature>(i)) == name) return static_cast<Feature>(i);
  return std::nullopt;
}

std::string_view FamilyName(Family f) {
  switch (f) {
    case Family::kNone: return "none";
    case Family::kProsody: return "prosody";
    case Family::kPhonation: return "phonation";
    case Family::kArticulation: return "articulation";
  }
  return "none";
}

Family ParseFamily(std::string_view name) {
  for (Family f : {Family::kNone, Family::kProsody, Family::kPhonation,
                   Family::kArticulation})
    if (FamilyName(f) == name) return f;
  Fail(ErrorKind::InvalidConfig, "unknown family '" + std::string(name) + "'");
}

std::span<const Feature> FamilyFeatures(Family f) {
  switch (f) {
    case Family::kProsody: return kProsody;
    case Family::kPhonation: return kPhonation;
    case Family::kArticulation: return kArticulation;
    case Family::kNone: break;
  }
  return {};
}

int FamilyClassCount(Family f) {
  int n = 1;
  for (std::size_t i = 0; i < FamilyFeatures(f).size(); ++i) n *= 3;
  return f == Family::kNone ? 0 : n;
}

std::size_t FamilyIndex(Family f) {
  switch (f) {
    case Family::kProsody: return 0;
    case Family::kPhonation: return 1;
    case Family::kArticulation: return 2;
    case Family::kNone: break;
  }
  Fail(ErrorKind::InvalidConfig, "family 'none' has no class");
}

bool BiomarkerVector::Complete() const {
  return std::all_of(values.begin(), values.end(),
                     [](const std::optional<double> &v) { return v.has_value(); });
}

ControlStats FitControlStats(std::span<const LabeledVector> vectors) {
  ControlStats stats;
  for (const auto &lv : vectors)
    if (lv.cohort == Cohort::kControl) stats.utt_ids.push_back(lv.utt_id);
  std::sort(stats.utt_ids.begin(), stats.utt_ids.end());
  if (stats.utt_ids.empty()) Fail(ErrorKind::NoControls, "no control vectors");

  for (std::size_t k = 0; k < kNumFeatures; ++k) {
    const auto name = std::string(FeatureName(static_cast<Feature>(k)));
    double sum = 0.0;
    std::size_t n = 0;
    for (const auto &lv : vectors)
      if (lv.cohort == Cohort::kControl && lv.vector.values[k]) {
        sum += *lv.vector.values[k];
        ++n;
      }
    if (n < 2)
      Fail(ErrorKind::NoControls,
           name + ": " + std::to_string(n) + " control value(s), need 2");
    const double mean = sum / static_cast<double>(n);
    double ss = 0.0;
    for (const auto &lv : vectors)
      if (lv.cohort == Cohort::kControl && lv.vector.values[k]) {
        const double d = *lv.vector.values[k] - mean;
        ss += d * d;
      }
    const double sd = std::sqrt(ss / static_cast<double>(n));
    if (!(sd > 0.0))
      Fail(ErrorKind::NormalizationDegenerate, name + ": control SD is zero");
    stats.mean[k] = mean;
    stats.sd[k] = sd;
  }
  return stats;
}

std::string_view BinName(Bin b) {
  switch (b) {
    case Bin::kLow: return "low";
    case Bin::kMedium: return "medium";
    case Bin::kHigh: return "high";
  }
  return "medium";
}

Bin BinFor(double z, double bin_edge) {
  if (z < -bin_edge) return Bin::kLow;
  if (z > bin_edge) return Bin::kHigh;
  return Bin::kMedium;
}

int BiomarkerLabels::FamilyClass(Family f) const {
  const auto &cls = family_classes[FamilyIndex(f)];
  if (!cls)
    Fail(ErrorKind::MissingFeature,
         "family '" + std::string(FamilyName(f)) + "' has a missing feature");
  return *cls;
}

int EncodeFamilyClass(std::span<const Bin> bins) {
  int cls = 0, place = 1;
  for (Bin b : bins) {
    cls += static_cast<int>(b) * place;
    place *= 3;
  }
  return cls;
}

std::vector<Bin> DecodeFamilyClass(int cls, std::size_t n_features) {
  std::vector<Bin> bins(n_features);
  for (std::size_t k = 0; k < n_features; ++k) {
    bins[k] = static_cast<Bin>(cls % 3);
    cls /= 3;
  }
  return bins;
}

BiomarkerLabels MakeLabels(const BiomarkerVector &v, const ControlStats &stats,
                           double bin_edge) {
  if (!(bin_edge > 0.0)) Fail(ErrorKind::InvalidRange, "bin edge must be positive");
  BiomarkerLabels labels;
  for (std::size_t k = 0; k < kNumFeatures; ++k) {
    if (!v.values[k]) continue;
    if (!(stats.sd[k] > 0.0))
      Fail(ErrorKind::NormalizationDegenerate,
           std::string(FeatureName(static_cast<Feature>(k))) + ": SD is zero");
    const double z = (*v.values[k] - stats.mean[k]) / stats.sd[k];
    labels.z[k] = z;
    labels.bins[k] = BinFor(z, bin_edge);
  }
  for (Family f : kAllFamilies) {
    std::vector<Bin> bins;
    bool complete = true;
    for (Feature feat : FamilyFeatures(f)) {
      const auto &b = labels.bins[static_cast<std::size_t>(feat)];
      if (!b) {
        complete = false;
        break;
      }
      bins.push_back(*b);
    }
    if (complete) labels.family_classes[FamilyIndex(f)] = EncodeFamilyClass(bins);
  }
  return labels;
}

}  // namespace hdspeech
