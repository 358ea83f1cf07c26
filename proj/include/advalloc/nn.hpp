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

#ifndef ADVALLOC_NN_HPP_
#define ADVALLOC_NN_HPP_

// Small fixed-topology feed-forward policies with softmax heads.
//
// The algorithm network reads an encoded history of earlier steps plus the
// current step's features and emits one distribution over the price set.
// The adversary network maps a Gaussian latent vector to N independent
// distributions over the budget set.  Gradients arrive from outside as
// d objective / d probability and are chained through the softmax, the
// fully connected stack and (for the algorithm) the history encoder.
//
// All parameters of a policy live in one flat buffer so that snapshots,
// persistence and optimizer steps operate on a single span.

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "advalloc/core.hpp"
#include "advalloc/rng.hpp"

namespace advalloc {

enum class PolicyKind : int { kAlgorithm = 0, kAdversary = 1 };

struct NetworkConfig {
  std::vector<int> alg_hidden{64, 64, 64};
  std::vector<int> adv_hidden{64, 64, 64, 64};
  int encoder_dim = 4;
  int latent_dim = 16;
  double leaky_slope = 0.01;
};

struct PolicyShape {
  PolicyKind kind = PolicyKind::kAlgorithm;
  int history_rows = 0;  // encoder rows, N - 1 for the algorithm
  int feature_dim = 0;   // per-step feature width (algorithm only)
  int encoder_dim = 0;
  int input_dim = 0;     // width fed to the first dense layer
  std::vector<int> hidden;
  int num_heads = 1;
  int head_size = 1;
  double slope = 0.01;

  int output_dim() const { return num_heads * head_size; }
  std::size_t num_params() const;

  friend bool operator==(const PolicyShape&, const PolicyShape&) = default;
};

// x_i for slot i: position, resources left, previous budget and previous
// price, each scaled into [0, 1].
struct StepFeatures {
  static constexpr int kWidth = 4;
  double index = 0.0;
  double available = 0.0;
  double last_budget = 0.0;
  double last_price = 0.0;
};

// slot is 0-based; last_budget / last_price are 0 for the first slot.
StepFeatures make_step_features(const GameConfig& cfg, int slot, int available,
                                Money last_budget, Money last_price);

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ConstMatrixMap = Eigen::Map<const RowMatrix>;
using ConstVectorMap = Eigen::Map<const Eigen::VectorXd>;

// h_{i-1} = vec(leaky(X W + B)) where X stacks earlier step features,
// zero-padded to history_rows.
struct HistoryEncoderView {
  ConstMatrixMap weight;  // feature_dim x encoder_dim
  ConstMatrixMap bias;    // history_rows x encoder_dim
};

class MlpPolicy {
 public:
  explicit MlpPolicy(PolicyShape shape);

  static MlpPolicy algorithm(const GameConfig& cfg, const NetworkConfig& net);
  static MlpPolicy adversary(const GameConfig& cfg, const NetworkConfig& net);

  // Uniform in [-s, s], s = sqrt(6 / (fan_in + fan_out)); biases zero.
  void initialize(Rng& rng);

  const PolicyShape& shape() const { return shape_; }
  PolicyKind kind() const { return shape_.kind; }
  std::size_t num_params() const { return params_.size(); }
  std::span<const double> params() const { return params_; }
  void set_params(std::span<const double> values);
  // Every mutation bumps the version; tapes from older versions are stale.
  std::uint64_t version() const { return version_; }

  HistoryEncoderView encoder() const;
  int num_layers() const { return static_cast<int>(layers_.size()); }
  ConstMatrixMap layer_weight(int layer) const;
  ConstVectorMap layer_bias(int layer) const;

  void add_scaled(std::span<const double> delta, double scale);

 private:
  struct LayerSlot {
    int in = 0;
    int out = 0;
    std::size_t weight_offset = 0;
    std::size_t bias_offset = 0;
  };

  PolicyShape shape_;
  std::vector<LayerSlot> layers_;
  std::size_t encoder_bias_offset_ = 0;
  std::vector<double> params_;
  std::uint64_t version_ = 0;
};

// Intermediate values of one forward pass, consumed by backprop.
struct ForwardTape {
  std::uint64_t version = 0;
  PolicyKind kind = PolicyKind::kAlgorithm;
  RowMatrix history;
  RowMatrix encoder_pre;
  std::vector<Eigen::VectorXd> layer_input;
  std::vector<Eigen::VectorXd> layer_pre;
  std::vector<double> probs;
};

// P_i over the price set.  history holds the features of slots < i.
std::vector<double> alg_forward(const MlpPolicy& policy,
                                std::span<const StepFeatures> history,
                                const StepFeatures& current,
                                ForwardTape* tape = nullptr);

// N distributions over the budget set, head-major (head k occupies
// [k*m, (k+1)*m)).
std::vector<double> adv_forward(const MlpPolicy& policy,
                                std::span<const double> latent,
                                ForwardTape* tape = nullptr);

std::vector<double> sample_latent(Rng& rng, int dim);

// Adds d(sum_a grad_on_probs[a] * P(a)) / d params into param_grad.
// Throws InvalidInput on a stale tape or mismatched sizes.
void backprop(const MlpPolicy& policy, const ForwardTape& tape,
              std::span<const double> grad_on_probs,
              std::span<double> param_grad);

std::vector<double> backprop(const MlpPolicy& policy, const ForwardTape& tape,
                             std::span<const double> grad_on_probs);

// Gradient ascent: params += learning_rate * gradient, with the gradient
// rescaled to clip_norm first when clip_norm > 0 and it is longer.
void sgd_step(MlpPolicy& policy, std::span<const double> gradient,
              double learning_rate, double clip_norm = 0.0);

}  // namespace advalloc

#endif  // ADVALLOC_NN_HPP_
