// Copyright 2026 The socdiff Authors.
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

#ifndef SOCDIFF_GRU_NET_HPP_
#define SOCDIFF_GRU_NET_HPP_

#include <array>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "socdiff/rng.hpp"

namespace socdiff {

inline constexpr int kNumActions = 2;

struct NetShape {
  int input_dim = 0;
  int hidden_dim = 12;
  int layers = 2;
  friend bool operator==(const NetShape&, const NetShape&) = default;
};

// Offsets of every tensor inside the flat parameter vector. Per layer the
// order is W_r, U_r, b_r, W_z, U_z, b_z, W_h, U_h, b_h (matrices row-major,
// rows = hidden units); the Q-head weight (2 x m) and bias (2) come last.
class ParamLayout {
 public:
  enum Tensor { kWr, kUr, kBr, kWz, kUz, kBz, kWh, kUh, kBh, kTensorsPerLayer };

  explicit ParamLayout(const NetShape& shape);

  const NetShape& shape() const { return shape_; }
  std::size_t size() const { return total_; }
  int layer_input_dim(int layer) const {
    return layer == 0 ? shape_.input_dim : shape_.hidden_dim;
  }
  std::size_t offset(int layer, Tensor t) const {
    return offsets_[layer * kTensorsPerLayer + t];
  }
  std::size_t head_weight_offset() const { return head_w_; }
  std::size_t head_bias_offset() const { return head_b_; }

 private:
  NetShape shape_;
  std::vector<std::size_t> offsets_;
  std::size_t head_w_ = 0;
  std::size_t head_b_ = 0;
  std::size_t total_ = 0;
};

// Read-only view of one recurrent layer's weights.
struct GruLayerView {
  int input_dim;
  int hidden_dim;
  const double* w_r;
  const double* u_r;
  const double* b_r;
  const double* w_z;
  const double* u_z;
  const double* b_z;
  const double* w_h;
  const double* u_h;
  const double* b_h;
};

// r = sigma(W_r x + U_r h + b_r), z = sigma(W_z x + U_z h + b_z),
// n = tanh(W_h x + U_h (r * h) + b_h), h' = z * h + (1 - z) * n.
// `h_out` may not alias `h`.
void gru_cell(const GruLayerView& p, std::span<const double> x,
              std::span<const double> h, std::span<double> h_out);

// Per-layer hidden vectors, concatenated (layers x m). Zero at episode start.
using HiddenState = std::vector<double>;

// One agent's recurrent Q-network: stacked GRU layers and a linear head on
// the top layer's hidden state.
class AgentNet {
 public:
  AgentNet() : AgentNet(NetShape{1, 1, 1}) {}
  explicit AgentNet(const NetShape& shape);  // all parameters zero

  const NetShape& shape() const { return layout_.shape(); }
  const ParamLayout& layout() const { return layout_; }
  std::span<double> params() { return params_; }
  std::span<const double> params() const { return params_; }

  GruLayerView layer(int l) const;
  HiddenState zero_state() const {
    return HiddenState(static_cast<std::size_t>(shape().layers) *
                       shape().hidden_dim, 0.0);
  }

  // Advances `hidden` by one observation and returns (Q(.,0), Q(.,1)).
  std::array<double, kNumActions> forward(HiddenState& hidden,
                                          std::span<const double> obs) const;

  bool all_finite() const;

  friend bool operator==(const AgentNet& a, const AgentNet& b) {
    return a.shape() == b.shape() && a.params_ == b.params_;
  }

 private:
  ParamLayout layout_;
  std::vector<double> params_;
};

// Weights ~ Uniform(-k, k), k = 1 / sqrt(fan_in) of each matrix (input
// width for W_*, m for U_* and the head); biases zero.
AgentNet init_params(const NetShape& shape, Rng& rng);

// Activations of a full unroll, kept for the backward pass.
struct ForwardTape {
  int steps = 0;
  std::vector<double> hidden;  // (steps + 1) x layers x m; slot 0 is zeros
  std::vector<double> r, z, n; // steps x layers x m
  std::vector<double> q;       // steps x 2
};

// Runs the net over `inputs` (steps x input_dim, row-major) from a zero state.
ForwardTape unroll(const AgentNet& net, std::span<const double> inputs);

// Exact reverse-mode gradient of a loss whose derivative with respect to the
// per-step Q-values is `dq` (steps x 2). Gradients are accumulated into
// `grad` (same layout as the parameters).
void bptt_gradients(const AgentNet& net, std::span<const double> inputs,
                    const ForwardTape& tape, std::span<const double> dq,
                    std::span<double> grad);
std::vector<double> bptt_gradients(const AgentNet& net,
                                   std::span<const double> inputs,
                                   std::span<const double> dq);

// Central differences (f(p + h) - f(p - h)) / 2h, one parameter at a time.
std::vector<double> finite_diff_grad(
    const AgentNet& net, const std::function<double(const AgentNet&)>& loss,
    double step);

struct AdamConfig {
  double learning_rate = 5e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

struct AdamState {
  std::vector<double> m;
  std::vector<double> v;
  long long step = 0;
  explicit AdamState(std::size_t n = 0) : m(n, 0.0), v(n, 0.0) {}
  friend bool operator==(const AdamState&, const AdamState&) = default;
};

// One bias-corrected Adam step in place.
void adam_update(std::span<double> params, std::span<const double> grads,
                 AdamState& state, const AdamConfig& cfg);

// Raw little-endian float64 array in layout order.
void write_params(std::ostream& os, const AgentNet& net);
AgentNet read_params(std::istream& is, const NetShape& shape);

}  // namespace socdiff

#endif  // SOCDIFF_GRU_NET_HPP_
