// src/trainer.cc

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

#include "hdspeech/trainer.h"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>

#include "hdspeech/error.h"
#include "hdspeech/rng.h"
#include "json.hpp"

namespace hdspeech {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double LogAdd(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double m = std::max(a, b);
  return m + std::log1p(std::exp(-std::abs(a - b)));
}

MatrixXd RandomMatrix(Index rows, Index cols, double scale, std::uint64_t seed) {
  Rng rng(seed);
  MatrixXd m(rows, cols);
  // Filled row by row so the draw order does not depend on storage order.
  for (Index r = 0; r < rows; ++r)
    for (Index c = 0; c < cols; ++c) m(r, c) = scale * rng.Gaussian();
  return m;
}

// Column-wise log-softmax.
MatrixXd LogSoftmax(const MatrixXd &logits) {
  MatrixXd out(logits.rows(), logits.cols());
  for (Index t = 0; t < logits.cols(); ++t) {
    const double m = logits.col(t).maxCoeff();
    const double lse = m + std::log((logits.col(t).array() - m).exp().sum());
    out.col(t) = logits.col(t).array() - lse;
  }
  return out;
}

std::vector<Index> ValidFrames(std::span<const std::uint8_t> mask, Index n_frames) {
  if (!mask.empty() && static_cast<Index>(mask.size()) != n_frames)
    Fail(ErrorKind::ShapeMismatch, "mask length " + std::to_string(mask.size()) +
                                       " != frames " + std::to_string(n_frames));
  std::vector<Index> idx;
  for (Index t = 0; t < n_frames; ++t)
    if (mask.empty() || mask[static_cast<std::size_t>(t)]) idx.push_back(t);
  return idx;
}

}  // namespace

void ToyEncoderConfig::Validate() const {
  if (n_mels <= 0 || n_layers <= 0 || hidden_dim <= 0 || adapter_dim <= 0)
    Fail(ErrorKind::InvalidConfig, "encoder sizes must be positive");
  if (adapter_dim >= hidden_dim)
    Fail(ErrorKind::InvalidConfig, "adapter_dim must be smaller than hidden_dim");
  if (vocab.empty()) Fail(ErrorKind::InvalidConfig, "empty vocabulary");
  for (std::size_t i = 0; i < vocab.size(); ++i) {
    if (vocab[i] == ' ') Fail(ErrorKind::InvalidConfig, "space in vocabulary");
    if (vocab.find(vocab[i], i + 1) != std::string::npos)
      Fail(ErrorKind::InvalidConfig, std::string("repeated vocabulary symbol '") +
                                         vocab[i] + "'");
  }
  frame.Validate();
}

ToyModel InitToyModel(const ToyEncoderConfig &cfg, Family bio_family) {
  cfg.Validate();
  ToyModel m;
  m.cfg = cfg;
  m.bio_family = bio_family;
  const Index h = cfg.hidden_dim, a = cfg.adapter_dim;
  for (int l = 0; l < cfg.n_layers; ++l) {
    const Index in = l == 0 ? cfg.n_mels : h;
    const auto base = static_cast<std::uint64_t>(l) * 16;
    AdapterLayer layer;
    layer.w = RandomMatrix(h, in, 1.0 / std::sqrt(static_cast<double>(in)),
                           DeriveSeed(cfg.seed, base + 1));
    layer.b = VectorXd::Zero(h);
    layer.down = RandomMatrix(a, h, 1.0 / std::sqrt(static_cast<double>(h)),
                              DeriveSeed(cfg.seed, base + 2));
    layer.down_b = VectorXd::Zero(a);
    layer.up = MatrixXd::Zero(h, a);
    layer.up_b = VectorXd::Zero(h);
    m.layers.push_back(std::move(layer));
  }
  m.ctc_w = RandomMatrix(cfg.vocab_size(), h, 0.1 / std::sqrt(static_cast<double>(h)),
                         DeriveSeed(cfg.seed, "ctc_head"));
  m.ctc_b = VectorXd::Zero(cfg.vocab_size());
  if (bio_family != Family::kNone) {
    const Index k = FamilyClassCount(bio_family);
    m.bio_w = RandomMatrix(k, h, 0.1 / std::sqrt(static_cast<double>(h)),
                           DeriveSeed(cfg.seed, "bio_head"));
    m.bio_b = VectorXd::Zero(k);
  }
  return m;
}

ToyGradients ToyGradients::ZerosLike(const ToyModel &model) {
  ToyGradients g;
  for (const auto &l : model.layers) {
    AdapterLayer z;
    z.down = MatrixXd::Zero(l.down.rows(), l.down.cols());
    z.down_b = VectorXd::Zero(l.down_b.size());
    z.up = MatrixXd::Zero(l.up.rows(), l.up.cols());
    z.up_b = VectorXd::Zero(l.up_b.size());
    g.layers.push_back(std::move(z));
  }
  g.ctc_w = MatrixXd::Zero(model.ctc_w.rows(), model.ctc_w.cols());
  g.ctc_b = VectorXd::Zero(model.ctc_b.size());
  g.bio_w = MatrixXd::Zero(model.bio_w.rows(), model.bio_w.cols());
  g.bio_b = VectorXd::Zero(model.bio_b.size());
  return g;
}

void ToyGradients::Add(const ToyGradients &o) {
  for (std::size_t l = 0; l < layers.size(); ++l) {
    layers[l].down += o.layers[l].down;
    layers[l].down_b += o.layers[l].down_b;
    layers[l].up += o.layers[l].up;
    layers[l].up_b += o.layers[l].up_b;
  }
  ctc_w += o.ctc_w;
  ctc_b += o.ctc_b;
  bio_w += o.bio_w;
  bio_b += o.bio_b;
}

void ToyGradients::Scale(double s) {
  for (auto &l : layers) {
    l.down *= s;
    l.down_b *= s;
    l.up *= s;
    l.up_b *= s;
  }
  ctc_w *= s;
  ctc_b *= s;
  bio_w *= s;
  bio_b *= s;
}

MatrixXd Encode(const ToyModel &model, const MatrixXd &features, EncoderCache *cache) {
  if (features.cols() != model.cfg.n_mels)
    Fail(ErrorKind::ShapeMismatch, "features have " + std::to_string(features.cols()) +
                                       " channels, model expects " +
                                       std::to_string(model.cfg.n_mels));
  MatrixXd x = features.transpose();
  if (cache) *cache = EncoderCache();
  for (const auto &layer : model.layers) {
    MatrixXd a = ((layer.w * x).colwise() + layer.b).array().tanh().matrix();
    MatrixXd g = ((layer.down * a).colwise() + layer.down_b).array().tanh().matrix();
    MatrixXd h = a + layer.up * g;
    h.colwise() += layer.up_b;
    if (cache) {
      cache->inputs.push_back(std::move(x));
      cache->backbone.push_back(std::move(a));
      cache->bottleneck.push_back(std::move(g));
    }
    x = std::move(h);
  }
  if (cache) cache->output = x;
  return x;
}

MatrixXd CtcLogits(const ToyModel &model, const MatrixXd &hidden) {
  MatrixXd logits = model.ctc_w * hidden;
  logits.colwise() += model.ctc_b;
  return logits;
}

LossValue CtcLoss(const MatrixXd &logits, std::span<const int> targets,
                  std::span<const std::uint8_t> mask) {
  const Index n_sym = logits.rows();
  for (int s : targets)
    if (s <= 0 || s >= n_sym)
      Fail(ErrorKind::InvalidRange, "target symbol " + std::to_string(s) +
                                        " outside 1.." + std::to_string(n_sym - 1));
  const auto frames = ValidFrames(mask, logits.cols());
  const auto t_len = static_cast<Index>(frames.size());
  const auto l_len = static_cast<Index>(targets.size());
  Index repeats = 0;
  for (Index i = 1; i < l_len; ++i)
    if (targets[static_cast<std::size_t>(i)] == targets[static_cast<std::size_t>(i - 1)])
      ++repeats;
  if (l_len + repeats > t_len)
    Fail(ErrorKind::InfeasibleTarget, "target of length " + std::to_string(l_len) +
                                          " needs " + std::to_string(l_len + repeats) +
                                          " frames, have " + std::to_string(t_len));
  LossValue out;
  out.grad = MatrixXd::Zero(logits.rows(), logits.cols());
  if (t_len == 0) return out;

  MatrixXd valid(n_sym, t_len);
  for (Index t = 0; t < t_len; ++t) valid.col(t) = logits.col(frames[static_cast<std::size_t>(t)]);
  const MatrixXd logp = LogSoftmax(valid);

  const Index s_len = 2 * l_len + 1;
  std::vector<int> ext(static_cast<std::size_t>(s_len), 0);
  for (Index i = 0; i < l_len; ++i)
    ext[static_cast<std::size_t>(2 * i + 1)] = targets[static_cast<std::size_t>(i)];
  auto can_skip = [&](Index s) {  // transition s-2 -> s allowed
    return s >= 2 && ext[static_cast<std::size_t>(s)] != 0 &&
           ext[static_cast<std::size_t>(s)] != ext[static_cast<std::size_t>(s - 2)];
  };
  auto lp = [&](Index t, Index s) { return logp(ext[static_cast<std::size_t>(s)], t); };

  MatrixXd alpha = MatrixXd::Constant(s_len, t_len, kNegInf);
  alpha(0, 0) = lp(0, 0);
  if (s_len > 1) alpha(1, 0) = lp(0, 1);
  for (Index t = 1; t < t_len; ++t)
    for (Index s = 0; s < s_len; ++s) {
      double v = alpha(s, t - 1);
      if (s >= 1) v = LogAdd(v, alpha(s - 1, t - 1));
      if (can_skip(s)) v = LogAdd(v, alpha(s - 2, t - 1));
      alpha(s, t) = v == kNegInf ? kNegInf : v + lp(t, s);
    }
  // beta(s, t): log prob of emitting frames t+1.. given state s at t.
  MatrixXd beta = MatrixXd::Constant(s_len, t_len, kNegInf);
  beta(s_len - 1, t_len - 1) = 0.0;
  if (s_len > 1) beta(s_len - 2, t_len - 1) = 0.0;
  for (Index t = t_len - 2; t >= 0; --t)
    for (Index s = 0; s < s_len; ++s) {
      double v = beta(s, t + 1) + lp(t + 1, s);
      if (s + 1 < s_len) v = LogAdd(v, beta(s + 1, t + 1) + lp(t + 1, s + 1));
      if (s + 2 < s_len && can_skip(s + 2))
        v = LogAdd(v, beta(s + 2, t + 1) + lp(t + 1, s + 2));
      beta(s, t) = v;
    }
  double log_p = alpha(s_len - 1, t_len - 1);
  if (s_len > 1) log_p = LogAdd(log_p, alpha(s_len - 2, t_len - 1));
  out.loss = -log_p;

  for (Index t = 0; t < t_len; ++t) {
    VectorXd occ = VectorXd::Constant(n_sym, kNegInf);
    for (Index s = 0; s < s_len; ++s) {
      const int k = ext[static_cast<std::size_t>(s)];
      occ(k) = LogAdd(occ(k), alpha(s, t) + beta(s, t));
    }
    const Index col = frames[static_cast<std::size_t>(t)];
    for (Index k = 0; k < n_sym; ++k) {
      const double post = occ(k) == kNegInf ? 0.0 : std::exp(occ(k) - log_p);
      out.grad(k, col) = std::exp(logp(k, t)) - post;
    }
  }
  return out;
}

BioLossValue BioLoss(const MatrixXd &hidden, std::span<const std::uint8_t> mask,
                     int label, const MatrixXd &w, const VectorXd &b) {
  if (w.cols() != hidden.rows() || w.rows() != b.size())
    Fail(ErrorKind::ShapeMismatch, "bio head does not match hidden size");
  if (label < 0 || label >= w.rows())
    Fail(ErrorKind::InvalidRange, "label " + std::to_string(label) + " outside [0, " +
                                      std::to_string(w.rows()) + ")");
  const auto frames = ValidFrames(mask, hidden.cols());
  if (frames.empty()) Fail(ErrorKind::AllMasked, "mask selects no frame");
  const double inv_n = 1.0 / static_cast<double>(frames.size());
  VectorXd pooled = VectorXd::Zero(hidden.rows());
  for (Index t : frames) pooled += hidden.col(t);
  pooled *= inv_n;
  VectorXd logits = w * pooled + b;
  const double m = logits.maxCoeff();
  const double lse = m + std::log((logits.array() - m).exp().sum());
  BioLossValue out;
  out.loss = lse - logits(label);
  VectorXd dlogits = (logits.array() - lse).exp().matrix();
  dlogits(label) -= 1.0;
  out.grad_w = dlogits * pooled.transpose();
  out.grad_b = dlogits;
  const VectorXd dpooled = w.transpose() * dlogits * inv_n;
  out.grad_hidden = MatrixXd::Zero(hidden.rows(), hidden.cols());
  for (Index t : frames) out.grad_hidden.col(t) = dpooled;
  return out;
}

namespace {

// Back-propagates d loss / d encoder output into adapter gradients.
void BackwardEncoder(const ToyModel &model, const EncoderCache &cache, MatrixXd dh,
                     ToyGradients *g) {
  for (std::size_t li = model.layers.size(); li-- > 0;) {
    const auto &layer = model.layers[li];
    const MatrixXd &a = cache.backbone[li];
    const MatrixXd &gb = cache.bottleneck[li];
    auto &gl = g->layers[li];
    gl.up.noalias() += dh * gb.transpose();
    gl.up_b += dh.rowwise().sum();
    const MatrixXd dz =
        ((layer.up.transpose() * dh).array() * (1.0 - gb.array().square())).matrix();
    gl.down.noalias() += dz * a.transpose();
    gl.down_b += dz.rowwise().sum();
    if (li == 0) break;
    MatrixXd da = dh + layer.down.transpose() * dz;
    const MatrixXd dpre = (da.array() * (1.0 - a.array().square())).matrix();
    dh = layer.w.transpose() * dpre;
  }
}

struct UttResult {
  double asr = 0.0;
  double bio = 0.0;
  ToyGradients grads;
};

}  // namespace

LossBreakdown ComputeLossAndGradients(const ToyModel &model, const TrainBatch &batch,
                                      const JointLossConfig &cfg, ToyGradients *grads) {
  if (batch.empty()) Fail(ErrorKind::ShapeMismatch, "empty batch");
  if (cfg.lambda < 0.0) Fail(ErrorKind::InvalidConfig, "lambda must be >= 0");
  const bool use_bio = cfg.lambda != 0.0 && cfg.active_family != Family::kNone;
  if (use_bio && model.bio_family != cfg.active_family)
    Fail(ErrorKind::InvalidConfig, "model bio head is for family '" +
                                       std::string(FamilyName(model.bio_family)) +
                                       "', loss asks for '" +
                                       std::string(FamilyName(cfg.active_family)) + "'");
  std::size_t n_bio = 0;
  if (use_bio)
    for (const auto &u : batch) n_bio += u.family_label.has_value();
  const double asr_scale = 1.0 / static_cast<double>(batch.size());
  const double bio_scale = n_bio ? cfg.lambda / static_cast<double>(n_bio) : 0.0;

  std::vector<UttResult> per(batch.size());
  std::vector<std::exception_ptr> errors(batch.size());
  const auto n = static_cast<long>(batch.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (long k = 0; k < n; ++k) {
    const auto i = static_cast<std::size_t>(k);
    // Exceptions may not leave the parallel region; rethrown in order below.
    try {
      const Utterance &u = batch[i];
      UttResult &r = per[i];
      EncoderCache cache;
      const MatrixXd hidden = Encode(model, u.features, grads ? &cache : nullptr);
      const MatrixXd logits = CtcLogits(model, hidden);
      const LossValue ctc = CtcLoss(logits, u.targets, u.mask);
      r.asr = ctc.loss;
      const bool bio_here = use_bio && u.family_label.has_value();
      std::optional<BioLossValue> bio;
      if (bio_here) {
        bio = BioLoss(hidden, u.mask, *u.family_label, model.bio_w, model.bio_b);
        r.bio = bio->loss;
      }
      if (!grads) continue;
      r.grads = ToyGradients::ZerosLike(model);
      const MatrixXd dlogits = asr_scale * ctc.grad;
      r.grads.ctc_w.noalias() += dlogits * hidden.transpose();
      r.grads.ctc_b += dlogits.rowwise().sum();
      MatrixXd dh = model.ctc_w.transpose() * dlogits;
      if (bio) {
        r.grads.bio_w += bio_scale * bio->grad_w;
        r.grads.bio_b += bio_scale * bio->grad_b;
        dh += bio_scale * bio->grad_hidden;
      }
      BackwardEncoder(model, cache, std::move(dh), &r.grads);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const auto &e : errors)
    if (e) std::rethrow_exception(e);

  LossBreakdown out;
  for (const auto &r : per) out.asr += r.asr;
  out.asr *= asr_scale;
  if (n_bio) {
    for (const auto &r : per) out.bio += r.bio;
    out.bio /= static_cast<double>(n_bio);
  }
  out.total = use_bio ? out.asr + cfg.lambda * out.bio : out.asr;
  if (grads) {
    *grads = ToyGradients::ZerosLike(model);
    for (const auto &r : per) grads->Add(r.grads);
  }
  return out;
}

LossBreakdown TrainStep(ToyModel *model, const TrainBatch &batch,
                        const JointLossConfig &cfg, OptimizerState *opt) {
  ToyGradients g;
  const LossBreakdown loss = ComputeLossAndGradients(*model, batch, cfg, &g);
  const double lr = opt->learning_rate;
  for (std::size_t l = 0; l < model->layers.size(); ++l) {
    auto &p = model->layers[l];
    p.down -= lr * g.layers[l].down;
    p.down_b -= lr * g.layers[l].down_b;
    p.up -= lr * g.layers[l].up;
    p.up_b -= lr * g.layers[l].up_b;
  }
  model->ctc_w -= lr * g.ctc_w;
  model->ctc_b -= lr * g.ctc_b;
  if (cfg.lambda != 0.0 && cfg.active_family != Family::kNone) {
    model->bio_w -= lr * g.bio_w;
    model->bio_b -= lr * g.bio_b;
  }
  ++opt->step;
  return loss;
}

std::vector<int> GreedyDecode(const MatrixXd &logits, std::span<const std::uint8_t> mask) {
  std::vector<int> out;
  int prev = -1;
  for (Index t : ValidFrames(mask, logits.cols())) {
    Index best = 0;
    logits.col(t).maxCoeff(&best);
    const int sym = static_cast<int>(best);
    if (sym != prev && sym != 0) out.push_back(sym);
    prev = sym;
  }
  return out;
}

std::vector<int> EncodeTranscript(const ToyEncoderConfig &cfg, std::string_view text) {
  std::vector<int> out;
  for (char c : text) {
    if (c == ' ' || c == '\t') continue;
    const auto pos = cfg.vocab.find(c);
    if (pos == std::string::npos)
      Fail(ErrorKind::ParseError, std::string("symbol '") + c + "' not in vocabulary");
    out.push_back(static_cast<int>(pos) + 1);
  }
  return out;
}

std::string DecodeTranscript(const ToyEncoderConfig &cfg, std::span<const int> symbols) {
  std::string out;
  for (int s : symbols) {
    if (s <= 0 || s > static_cast<int>(cfg.vocab.size())) continue;
    if (!out.empty()) out.push_back(' ');
    out.push_back(cfg.vocab[static_cast<std::size_t>(s - 1)]);
  }
  return out;
}

namespace {

using nlohmann::json;

json MatrixToJson(const MatrixXd &m) {
  json data = json::array();
  for (Index r = 0; r < m.rows(); ++r)
    for (Index c = 0; c < m.cols(); ++c) data.push_back(m(r, c));
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", data}};
}

MatrixXd MatrixFromJson(const json &j) {
  const auto rows = j.at("rows").get<Index>(), cols = j.at("cols").get<Index>();
  const auto &data = j.at("data");
  if (static_cast<Index>(data.size()) != rows * cols)
    Fail(ErrorKind::ParseError, "checkpoint matrix size mismatch");
  MatrixXd m(rows, cols);
  for (Index r = 0; r < rows; ++r)
    for (Index c = 0; c < cols; ++c) m(r, c) = data[static_cast<std::size_t>(r * cols + c)];
  return m;
}

VectorXd VectorFromJson(const json &j) {
  const MatrixXd m = MatrixFromJson(j);
  return Eigen::Map<const VectorXd>(m.data(), m.size());
}

}  // namespace

std::string ModelToJson(const ToyModel &model) {
  const auto &c = model.cfg;
  json cfg = {{"n_mels", c.n_mels},
              {"frame_len_ms", c.frame.frame_len_ms},
              {"hop_ms", c.frame.hop_ms},
              {"window", std::string(WindowName(c.frame.window))},
              {"n_layers", c.n_layers},
              {"hidden_dim", c.hidden_dim},
              {"adapter_dim", c.adapter_dim},
              {"vocab", c.vocab},
              {"seed", c.seed}};
  json layers = json::array();
  for (const auto &l : model.layers)
    layers.push_back({{"w", MatrixToJson(l.w)},
                      {"b", MatrixToJson(l.b)},
                      {"down", MatrixToJson(l.down)},
                      {"down_b", MatrixToJson(l.down_b)},
                      {"up", MatrixToJson(l.up)},
                      {"up_b", MatrixToJson(l.up_b)}});
  json out = {{"config", cfg},
              {"layers", layers},
              {"ctc_w", MatrixToJson(model.ctc_w)},
              {"ctc_b", MatrixToJson(model.ctc_b)},
              {"bio_family", std::string(FamilyName(model.bio_family))},
              {"bio_w", MatrixToJson(model.bio_w)},
              {"bio_b", MatrixToJson(model.bio_b)}};
  return out.dump() + "\n";
}

ToyModel ModelFromJson(std::string_view text) {
  try {
    const json j = json::parse(text);
    ToyModel m;
    const auto &c = j.at("config");
    m.cfg.n_mels = c.at("n_mels").get<int>();
    m.cfg.frame.frame_len_ms = c.at("frame_len_ms").get<double>();
    m.cfg.frame.hop_ms = c.at("hop_ms").get<double>();
    m.cfg.frame.window = ParseWindow(c.at("window").get<std::string>());
    m.cfg.n_layers = c.at("n_layers").get<int>();
    m.cfg.hidden_dim = c.at("hidden_dim").get<int>();
    m.cfg.adapter_dim = c.at("adapter_dim").get<int>();
    m.cfg.vocab = c.at("vocab").get<std::string>();
    m.cfg.seed = c.at("seed").get<std::uint64_t>();
    m.cfg.Validate();
    for (const auto &l : j.at("layers")) {
      AdapterLayer layer;
      layer.w = MatrixFromJson(l.at("w"));
      layer.b = VectorFromJson(l.at("b"));
      layer.down = MatrixFromJson(l.at("down"));
      layer.down_b = VectorFromJson(l.at("down_b"));
      layer.up = MatrixFromJson(l.at("up"));
      layer.up_b = VectorFromJson(l.at("up_b"));
      m.layers.push_back(std::move(layer));
    }
    m.ctc_w = MatrixFromJson(j.at("ctc_w"));
    m.ctc_b = VectorFromJson(j.at("ctc_b"));
    m.bio_family = ParseFamily(j.at("bio_family").get<std::string>());
    m.bio_w = MatrixFromJson(j.at("bio_w"));
    m.bio_b = VectorFromJson(j.at("bio_b"));
    return m;
  } catch (const json::exception &e) {
    Fail(ErrorKind::ParseError, std::string("checkpoint: ") + e.what());
  }
}

}  // namespace hdspeech
