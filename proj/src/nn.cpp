// Copyright 2026 The advalloc Authors. All rights reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "advalloc/nn.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "advalloc/error.hpp"

namespace advalloc {
namespace {

using MatrixMap = Eigen::Map<RowMatrix>;
using VectorMap = Eigen::Map<Eigen::VectorXd>;

double leaky(double x, double slope) { return x > 0.0 ? x : slope * x; }
double leaky_slope_at(double x, double slope) { return x > 0.0 ? 1.0 : slope; }

void softmax_heads(const Eigen::VectorXd& logits, int heads, int size,
                   std::vector<double>& out) {
  out.resize(static_cast<std::size_t>(heads) * size);
  for (int h = 0; h < heads; ++h) {
    const double* z = logits.data() + static_cast<std::ptrdiff_t>(h) * size;
    double* p = out.data() + static_cast<std::ptrdiff_t>(h) * size;
    const double top = *std::max_element(z, z + size);
    double total = 0.0;
    for (int a = 0; a < size; ++a) {
      p[a] = std::exp(z[a] - top);
      total += p[a];
    }
    for (int a = 0; a < size; ++a) p[a] /= total;
  }
}

}  // namespace

std::size_t PolicyShape::num_params() const {
  std::size_t total = 0;
  if (kind == PolicyKind::kAlgorithm) {
    total += static_cast<std::size_t>(feature_dim) * encoder_dim;
    total += static_cast<std::size_t>(history_rows) * encoder_dim;
  }
  int in = input_dim;
  for (int width : hidden) {
    total += static_cast<std::size_t>(in) * width + width;
    in = width;
  }
  total += static_cast<std::size_t>(in) * output_dim() + output_dim();
  return total;
}

StepFeatures make_step_features(const GameConfig& cfg, int slot, int available,
                                Money last_budget, Money last_price) {
  StepFeatures f;
  f.index = static_cast<double>(slot + 1) / cfg.n_users;
  f.available = static_cast<double>(available) / cfg.n_resources;
  f.last_budget = static_cast<double>(last_budget) / static_cast<double>(cfg.upper_bound());
  f.last_price = static_cast<double>(last_price) / static_cast<double>(cfg.max_price());
  return f;
}

MlpPolicy::MlpPolicy(PolicyShape shape) : shape_(std::move(shape)) {
  if (shape_.input_dim < 1 || shape_.num_heads < 1 || shape_.head_size < 1) {
    throw InvalidInput("policy dimensions must be positive");
  }
  for (int width : shape_.hidden) {
    if (width < 1) throw InvalidInput("hidden layer widths must be positive");
  }
  std::size_t offset = 0;
  if (shape_.kind == PolicyKind::kAlgorithm) {
    if (shape_.input_dim != shape_.history_rows * shape_.encoder_dim + shape_.feature_dim) {
      throw InvalidInput("algorithm input width does not match the encoder layout");
    }
    offset += static_cast<std::size_t>(shape_.feature_dim) * shape_.encoder_dim;
    encoder_bias_offset_ = offset;
    offset += static_cast<std::size_t>(shape_.history_rows) * shape_.encoder_dim;
  }
  int in = shape_.input_dim;
  auto add_layer = [&](int out) {
    LayerSlot slot{in, out, offset, offset + static_cast<std::size_t>(in) * out};
    offset = slot.bias_offset + out;
    layers_.push_back(slot);
    in = out;
  };
  for (int width : shape_.hidden) add_layer(width);
  add_layer(shape_.output_dim());
  params_.assign(offset, 0.0);
}

MlpPolicy MlpPolicy::algorithm(const GameConfig& cfg, const NetworkConfig& net) {
  PolicyShape s;
  s.kind = PolicyKind::kAlgorithm;
  s.history_rows = cfg.n_users - 1;
  s.feature_dim = StepFeatures::kWidth;
  s.encoder_dim = net.encoder_dim;
  s.input_dim = s.history_rows * s.encoder_dim + s.feature_dim;
  s.hidden = net.alg_hidden;
  s.num_heads = 1;
  s.head_size = cfg.num_prices();
  s.slope = net.leaky_slope;
  return MlpPolicy(std::move(s));
}

MlpPolicy MlpPolicy::adversary(const GameConfig& cfg, const NetworkConfig& net) {
  PolicyShape s;
  s.kind = PolicyKind::kAdversary;
  s.input_dim = net.latent_dim;
  s.hidden = net.adv_hidden;
  s.num_heads = cfg.n_users;
  s.head_size = cfg.num_budgets();
  s.slope = net.leaky_slope;
  return MlpPolicy(std::move(s));
}

void MlpPolicy::initialize(Rng& rng) {
  std::fill(params_.begin(), params_.end(), 0.0);
  auto fill_uniform = [&](std::size_t offset, std::size_t count, int fan_in, int fan_out) {
    const double s = std::sqrt(6.0 / (fan_in + fan_out));
    std::uniform_real_distribution<double> dist(-s, s);
    for (std::size_t k = 0; k < count; ++k) params_[offset + k] = dist(rng);
  };
  if (shape_.kind == PolicyKind::kAlgorithm) {
    fill_uniform(0, static_cast<std::size_t>(shape_.feature_dim) * shape_.encoder_dim,
                 shape_.feature_dim, shape_.encoder_dim);
  }
  for (const LayerSlot& layer : layers_) {
    fill_uniform(layer.weight_offset, static_cast<std::size_t>(layer.in) * layer.out,
                 layer.in, layer.out);
  }
  ++version_;
}

void MlpPolicy::set_params(std::span<const double> values) {
  if (values.size() != params_.size()) {
    throw InvalidInput("parameter vector has " + std::to_string(values.size()) +
                       " entries, policy expects " + std::to_string(params_.size()));
  }
  std::copy(values.begin(), values.end(), params_.begin());
  ++version_;
}

void MlpPolicy::add_scaled(std::span<const double> delta, double scale) {
  if (delta.size() != params_.size()) {
    throw InvalidInput("gradient size does not match the policy");
  }
  for (std::size_t k = 0; k < params_.size(); ++k) params_[k] += scale * delta[k];
  ++version_;
}

HistoryEncoderView MlpPolicy::encoder() const {
  if (shape_.kind != PolicyKind::kAlgorithm) {
    throw InvalidInput("adversary policies have no history encoder");
  }
  return {ConstMatrixMap(params_.data(), shape_.feature_dim, shape_.encoder_dim),
          ConstMatrixMap(params_.data() + encoder_bias_offset_, shape_.history_rows,
                         shape_.encoder_dim)};
}

ConstMatrixMap MlpPolicy::layer_weight(int layer) const {
  const LayerSlot& s = layers_.at(static_cast<std::size_t>(layer));
  return ConstMatrixMap(params_.data() + s.weight_offset, s.out, s.in);
}

ConstVectorMap MlpPolicy::layer_bias(int layer) const {
  const LayerSlot& s = layers_.at(static_cast<std::size_t>(layer));
  return ConstVectorMap(params_.data() + s.bias_offset, s.out);
}

namespace {

std::vector<double> dense_forward(const MlpPolicy& policy, Eigen::VectorXd input,
                                  ForwardTape& tape) {
  const double slope = policy.shape().slope;
  const int layers = policy.num_layers();
  tape.layer_input.resize(static_cast<std::size_t>(layers));
  tape.layer_pre.resize(static_cast<std::size_t>(layers));
  Eigen::VectorXd activation = std::move(input);
  for (int l = 0; l < layers; ++l) {
    Eigen::VectorXd pre = policy.layer_weight(l) * activation + policy.layer_bias(l);
    tape.layer_input[static_cast<std::size_t>(l)] = std::move(activation);
    if (l + 1 < layers) {
      activation = pre.unaryExpr([slope](double x) { return leaky(x, slope); });
    }
    tape.layer_pre[static_cast<std::size_t>(l)] = std::move(pre);
  }
  softmax_heads(tape.layer_pre.back(), policy.shape().num_heads,
                policy.shape().head_size, tape.probs);
  tape.version = policy.version();
  tape.kind = policy.kind();
  return tape.probs;
}

}  // namespace

std::vector<double> alg_forward(const MlpPolicy& policy,
                                std::span<const StepFeatures> history,
                                const StepFeatures& current, ForwardTape* tape) {
  const PolicyShape& s = policy.shape();
  if (s.kind != PolicyKind::kAlgorithm) {
    throw InvalidInput("alg_forward needs an algorithm policy");
  }
  if (history.size() > static_cast<std::size_t>(s.history_rows)) {
    throw InvalidInput("history has " + std::to_string(history.size()) +
                       " rows, encoder holds " + std::to_string(s.history_rows));
  }
  ForwardTape local;
  ForwardTape& t = tape ? *tape : local;

  t.history.setZero(s.history_rows, s.feature_dim);
  for (std::size_t r = 0; r < history.size(); ++r) {
    const auto row = static_cast<Eigen::Index>(r);
    t.history(row, 0) = history[r].index;
    t.history(row, 1) = history[r].available;
    t.history(row, 2) = history[r].last_budget;
    t.history(row, 3) = history[r].last_price;
  }
  Eigen::VectorXd input(s.input_dim);
  if (s.history_rows > 0) {
    const HistoryEncoderView enc = policy.encoder();
    t.encoder_pre = t.history * enc.weight + enc.bias;
    const double slope = s.slope;
    Eigen::Index k = 0;
    for (Eigen::Index r = 0; r < t.encoder_pre.rows(); ++r) {
      for (Eigen::Index c = 0; c < t.encoder_pre.cols(); ++c) {
        input(k++) = leaky(t.encoder_pre(r, c), slope);
      }
    }
  } else {
    t.encoder_pre.resize(0, s.encoder_dim);
  }
  const Eigen::Index base = static_cast<Eigen::Index>(s.history_rows) * s.encoder_dim;
  input(base + 0) = current.index;
  input(base + 1) = current.available;
  input(base + 2) = current.last_budget;
  input(base + 3) = current.last_price;
  return dense_forward(policy, std::move(input), t);
}

std::vector<double> adv_forward(const MlpPolicy& policy,
                                std::span<const double> latent, ForwardTape* tape) {
  const PolicyShape& s = policy.shape();
  if (s.kind != PolicyKind::kAdversary) {
    throw InvalidInput("adv_forward needs an adversary policy");
  }
  if (latent.size() != static_cast<std::size_t>(s.input_dim)) {
    throw InvalidInput("latent vector has " + std::to_string(latent.size()) +
                       " entries, policy expects " + std::to_string(s.input_dim));
  }
  ForwardTape local;
  ForwardTape& t = tape ? *tape : local;
  Eigen::VectorXd input = Eigen::Map<const Eigen::VectorXd>(
      latent.data(), static_cast<Eigen::Index>(latent.size()));
  return dense_forward(policy, std::move(input), t);
}

std::vector<double> sample_latent(Rng& rng, int dim) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> v(static_cast<std::size_t>(dim));
  for (double& x : v) x = normal(rng);
  return v;
}

void backprop(const MlpPolicy& policy, const ForwardTape& tape,
              std::span<const double> grad_on_probs, std::span<double> param_grad) {
  const PolicyShape& s = policy.shape();
  if (tape.version != policy.version() || tape.kind != s.kind ||
      tape.layer_pre.size() != static_cast<std::size_t>(policy.num_layers())) {
    throw InvalidInput("stale forward tape: parameters changed since the forward pass");
  }
  if (grad_on_probs.size() != static_cast<std::size_t>(s.output_dim())) {
    throw InvalidInput("probability gradient has the wrong length");
  }
  if (param_grad.size() != policy.num_params()) {
    throw InvalidInput("parameter gradient buffer has the wrong length");
  }

  // Softmax: dL/dz = p * (g - <g, p>) per head.
  Eigen::VectorXd delta(s.output_dim());
  for (int h = 0; h < s.num_heads; ++h) {
    const std::size_t base = static_cast<std::size_t>(h) * s.head_size;
    double dot = 0.0;
    for (int a = 0; a < s.head_size; ++a) dot += grad_on_probs[base + a] * tape.probs[base + a];
    for (int a = 0; a < s.head_size; ++a) {
      delta(static_cast<Eigen::Index>(base + a)) =
          tape.probs[base + a] * (grad_on_probs[base + a] - dot);
    }
  }
  if (delta.isZero(0.0)) return;

  // Offsets into the flat layout mirror the constructor.
  std::size_t offset = 0;
  if (s.kind == PolicyKind::kAlgorithm) {
    offset += static_cast<std::size_t>(s.feature_dim) * s.encoder_dim +
              static_cast<std::size_t>(s.history_rows) * s.encoder_dim;
  }
  std::vector<std::size_t> weight_offset;
  int in = s.input_dim;
  for (int l = 0; l < policy.num_layers(); ++l) {
    const int out = l < static_cast<int>(s.hidden.size()) ? s.hidden[l] : s.output_dim();
    weight_offset.push_back(offset);
    offset += static_cast<std::size_t>(in) * out + out;
    in = out;
  }

  for (int l = policy.num_layers(); l-- > 0;) {
    const Eigen::VectorXd& input = tape.layer_input[static_cast<std::size_t>(l)];
    const Eigen::Index out = delta.size();
    const Eigen::Index width = input.size();
    MatrixMap dW(param_grad.data() + weight_offset[static_cast<std::size_t>(l)], out, width);
    VectorMap db(param_grad.data() + weight_offset[static_cast<std::size_t>(l)] +
                     static_cast<std::size_t>(out * width),
                 out);
    dW.noalias() += delta * input.transpose();
    db += delta;
    Eigen::VectorXd grad_input = policy.layer_weight(l).transpose() * delta;
    if (l > 0) {
      const Eigen::VectorXd& below = tape.layer_pre[static_cast<std::size_t>(l - 1)];
      for (Eigen::Index k = 0; k < grad_input.size(); ++k) {
        grad_input(k) *= leaky_slope_at(below(k), s.slope);
      }
      delta = std::move(grad_input);
    } else if (s.kind == PolicyKind::kAlgorithm && s.history_rows > 0) {
      RowMatrix d_pre(s.history_rows, s.encoder_dim);
      Eigen::Index k = 0;
      for (Eigen::Index r = 0; r < d_pre.rows(); ++r) {
        for (Eigen::Index c = 0; c < d_pre.cols(); ++c, ++k) {
          d_pre(r, c) = grad_input(k) * leaky_slope_at(tape.encoder_pre(r, c), s.slope);
        }
      }
      MatrixMap dWe(param_grad.data(), s.feature_dim, s.encoder_dim);
      MatrixMap dBe(param_grad.data() + static_cast<std::size_t>(s.feature_dim) * s.encoder_dim,
                    s.history_rows, s.encoder_dim);
      dWe.noalias() += tape.history.transpose() * d_pre;
      dBe += d_pre;
    }
  }
}

std::vector<double> backprop(const MlpPolicy& policy, const ForwardTape& tape,
                             std::span<const double> grad_on_probs) {
  std::vector<double> grad(policy.num_params(), 0.0);
  backprop(policy, tape, grad_on_probs, grad);
  return grad;
}

void sgd_step(MlpPolicy& policy, std::span<const double> gradient,
              double learning_rate, double clip_norm) {
  double scale = learning_rate;
  if (clip_norm > 0.0) {
    double sq = 0.0;
    for (double g : gradient) sq += g * g;
    const double norm = std::sqrt(sq);
    if (norm > clip_norm) scale *= clip_norm / norm;
  }
  policy.add_scaled(gradient, scale);
}

}  // namespace advalloc
