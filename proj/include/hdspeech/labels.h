// hdspeech/labels.h

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

// Biomarker vectors, control-cohort z-normalization, low/medium/high bins
// and the per-family joint class used for auxiliary supervision.

#ifndef HDSPEECH_LABELS_H_
#define HDSPEECH_LABELS_H_

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hdspeech/corpus.h"

namespace hdspeech {

// Fixed feature order; family membership and the base-3 digit order follow it.
enum class Feature {
  kSpeechRateProxy = 0,
  kPauseRatio,
  kF0Sigma,
  kJitterLocal,
  kShimmerLocal,
  kHnrDb,
  kVsaProxy,
};
inline constexpr std::size_t kNumFeatures = 7;

std::string_view FeatureName(Feature f);
std::optional<Feature> ParseFeature(std::string_view name);

enum class Family { kNone, kProsody, kPhonation, kArticulation };
inline constexpr std::array<Family, 3> kAllFamilies = {
    Family::kProsody, Family::kPhonation, Family::kArticulation};

std::string_view FamilyName(Family f);
Family ParseFamily(std::string_view name);
std::span<const Feature> FamilyFeatures(Family f);
// 3^(number of member features): 27, 27, 3; 0 for kNone.
int FamilyClassCount(Family f);

// Seven measurements; a missing value is nullopt, never a silent zero.
struct BiomarkerVector {
  std::array<std::optional<double>, kNumFeatures> values{};

  std::optional<double> &operator[](Feature f) {
    return values[static_cast<std::size_t>(f)];
  }
  const std::optional<double> &operator[](Feature f) const {
    return values[static_cast<std::size_t>(f)];
  }
  bool Complete() const;
};

struct ControlStats {
  std::array<double, kNumFeatures> mean{};
  std::array<double, kNumFeatures> sd{};
  std::vector<std::string> utt_ids;  // controls used for the fit, sorted
};

struct LabeledVector {
  std::string utt_id;
  BiomarkerVector vector;
  Cohort cohort = Cohort::kControl;
};

// Mean and population SD of every feature over control vectors that carry
// it. Throws NoControls (< 2 controls for some feature) and
// NormalizationDegenerate (SD == 0), both naming the feature.
ControlStats FitControlStats(std::span<const LabeledVector> vectors);

enum class Bin { kLow = 0, kMedium = 1, kHigh = 2 };
std::string_view BinName(Bin b);

struct BiomarkerLabels {
  std::array<std::optional<double>, kNumFeatures> z{};
  std::array<std::optional<Bin>, kNumFeatures> bins{};
  // Indexed by FamilyIndex(); nullopt when a member feature is missing.
  std::array<std::optional<int>, 3> family_classes{};

  // Throws MissingFeature if the family has a missing member.
  int FamilyClass(Family f) const;
};

std::size_t FamilyIndex(Family f);

Bin BinFor(double z, double bin_edge);

// z = (x - mu) / sigma; low below -edge, high above +edge; family class is
// sum_k bin_k 3^k over the family's features in order.
BiomarkerLabels MakeLabels(const BiomarkerVector &v, const ControlStats &stats,
                           double bin_edge = 0.5);

int EncodeFamilyClass(std::span<const Bin> bins);
std::vector<Bin> DecodeFamilyClass(int cls, std::size_t n_features);

}  // namespace hdspeech

#endif  // HDSPEECH_LABELS_H_
