// hdspeech/trainer.h

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

// Toy multi-task trainer: log-mel frontend, frozen per-frame tanh encoder with
// residual bottleneck adapters, CTC transcription head and a linear biomarker
// head over masked mean-pooled states. Loss = ctc + lambda * bio.

#ifndef HDSPEECH_TRAINER_H_
#define HDSPEECH_TRAINER_H_

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hdspeech/audio.h"
#include "hdspeech/labels.h"

namespace hdspeech {

struct ToyEncoderConfig {
  int n_mels = 40;
  FrameSpec frame;
  int n_layers = 2;
  int hidden_dim = 64;
  int adapter_dim = 16;
  // Output symbols 1..vocab.size(); symbol 0 is the blank.
  std::string vocab = "abcdefgh";
  std::uint64_t seed = 1;

  int vocab_size() const { return static_cast<int>(vocab.size()) + 1; }
  // Throws InvalidConfig.
  void Validate() const;
};

struct JointLossConfig {
  double lambda = 0.1;
  Family active_family = Family::kNone;
};

// HTK-style triangular filters on the mel scale between 0 and sr/2,
// evaluated at FFT bin centre frequencies.
class MelFilterbank {
 public:
  MelFilterbank(int n_mels, std::size_t fft_size, int sample_rate_hz);
  std::size_t n_mels() const { return static_cast<std::size_t>(weights_.rows()); }
  std::size_t fft_size() const { return fft_size_; }
  // Centre frequency of channel k in Hz.
  double CenterHz(int k) const { return centers_hz_[static_cast<std::size_t>(k)]; }
  const Eigen::MatrixXd &weights() const { return weights_; }  // n_mels x bins

 private:
  std::size_t fft_size_;
  Eigen::MatrixXd weights_;
  std::vector<double> centers_hz_;
};

double HzToMel(double hz);
double MelToHz(double mel);

// Frames x n_mels matrix of log(mel power + 1e-6). OpenMP-parallel over
// frames. Throws AudioTooShort.
Eigen::MatrixXd LogMel(const AudioBuffer &audio, const ToyEncoderConfig &cfg);

// Per-channel mean/variance normalization over the rows; a channel with
// zero variance is only mean-centered.
Eigen::MatrixXd Cmvn(const Eigen::MatrixXd &features);

// Orthonormal DCT-II across channels of each row (full length, no
// truncation). Log-mel channels are strongly correlated; the cepstra are
// close to decorrelated, which keeps plain gradient descent on the frozen
// random encoder well conditioned.
Eigen::MatrixXd Cepstra(const Eigen::MatrixXd &log_mel);

// Encoder input: Cmvn(Cepstra(LogMel(audio))).
Eigen::MatrixXd ToyFeatures(const AudioBuffer &audio, const ToyEncoderConfig &cfg);

struct Utterance {
  Eigen::MatrixXd features;     // frames x n_mels
  std::vector<std::uint8_t> mask;  // 1 = valid frame
  std::vector<int> targets;     // symbols in 1..V-1
  std::optional<int> family_label;
};

using TrainBatch = std::vector<Utterance>;

struct AdapterLayer {
  // Frozen backbone.
  Eigen::MatrixXd w;
  Eigen::VectorXd b;
  // Trainable bottleneck.
  Eigen::MatrixXd down;
  Eigen::VectorXd down_b;
  Eigen::MatrixXd up;
  Eigen::VectorXd up_b;
};

struct ToyModel {
  ToyEncoderConfig cfg;
  std::vector<AdapterLayer> layers;
  Eigen::MatrixXd ctc_w;
  Eigen::VectorXd ctc_b;
  Family bio_family = Family::kNone;  // kNone: no bio head at all
  Eigen::MatrixXd bio_w;
  Eigen::VectorXd bio_b;
};

// Seeded init; adapter up-projections start at zero so the adapted encoder
// equals the backbone. Each block draws from its own derived stream.
ToyModel InitToyModel(const ToyEncoderConfig &cfg, Family bio_family);

// Gradients of the trainable parameters only.
struct ToyGradients {
  std::vector<AdapterLayer> layers;  // w, b left empty
  Eigen::MatrixXd ctc_w;
  Eigen::VectorXd ctc_b;
  Eigen::MatrixXd bio_w;
  Eigen::VectorXd bio_b;

  static ToyGradients ZerosLike(const ToyModel &model);
  void Add(const ToyGradients &other);
  void Scale(double s);
};

struct EncoderCache {
  std::vector<Eigen::MatrixXd> inputs;   // per layer, dim x T
  std::vector<Eigen::MatrixXd> backbone; // tanh(W x + b)
  std::vector<Eigen::MatrixXd> bottleneck;  // tanh(D a + bd)
  Eigen::MatrixXd output;                // hidden x T
};

// Hidden states, hidden_dim x frames. Throws ShapeMismatch.
Eigen::MatrixXd Encode(const ToyModel &model, const Eigen::MatrixXd &features,
                       EncoderCache *cache = nullptr);

struct LossValue {
  double loss = 0.0;
  Eigen::MatrixXd grad;  // d loss / d input, same shape as the input
};

// CTC negative log-likelihood of targets given per-frame logits
// (V x T, symbol 0 = blank), log-space forward-backward over frames with
// mask 1. Gradient is w.r.t. the logits; masked frames get zero.
// Throws InfeasibleTarget.
LossValue CtcLoss(const Eigen::MatrixXd &logits, std::span<const int> targets,
                  std::span<const std::uint8_t> mask);

// Cross-entropy of a linear head over the masked mean of hidden (H x T).
// Gradient is w.r.t. hidden. Throws AllMasked, InvalidRange.
struct BioLossValue {
  double loss = 0.0;
  Eigen::MatrixXd grad_hidden;
  Eigen::MatrixXd grad_w;
  Eigen::VectorXd grad_b;
};
BioLossValue BioLoss(const Eigen::MatrixXd &hidden,
                     std::span<const std::uint8_t> mask, int label,
                     const Eigen::MatrixXd &w, const Eigen::VectorXd &b);

struct LossBreakdown {
  double total = 0.0;
  double asr = 0.0;
  double bio = 0.0;
};

// Mean CTC over utterances plus lambda times mean CE over the utterances
// that carry a label. When lambda is 0 or the family is none the bio term
// is never evaluated. Per-utterance work is OpenMP-parallel; the reduction
// runs serially in batch order.
LossBreakdown ComputeLossAndGradients(const ToyModel &model, const TrainBatch &batch,
                                      const JointLossConfig &cfg,
                                      ToyGradients *grads);

struct OptimizerState {
  double learning_rate = 1e-2;
  std::int64_t step = 0;
};

// One full-batch gradient-descent step on adapters and heads.
LossBreakdown TrainStep(ToyModel *model, const TrainBatch &batch,
                        const JointLossConfig &cfg, OptimizerState *opt);

// Argmax per valid frame, collapse repeats, drop blanks.
std::vector<int> GreedyDecode(const Eigen::MatrixXd &logits,
                              std::span<const std::uint8_t> mask = {});
Eigen::MatrixXd CtcLogits(const ToyModel &model, const Eigen::MatrixXd &hidden);

// Transcript <-> symbols: characters of cfg.vocab, spaces ignored.
// Throws ParseError on a character outside the vocabulary.
std::vector<int> EncodeTranscript(const ToyEncoderConfig &cfg, std::string_view text);
std::string DecodeTranscript(const ToyEncoderConfig &cfg, std::span<const int> symbols);

std::string ModelToJson(const ToyModel &model);
ToyModel ModelFromJson(std::string_view text);

}  // namespace hdspeech

#endif  // HDSPEECH_TRAINER_H_
