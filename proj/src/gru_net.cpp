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

#include "socdiff/gru_net.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <istream>
#include <ostream>
#include <string>

#include "socdiff/error.hpp"

namespace socdiff {
namespace {

inline double logistic(double a) { return 1.0 / (1.0 + std::exp(-a)); }

// y[k] += sum_j A[k, j] x[j] for a rows x cols row-major A.
inline void gemv_acc(const double* a, int rows, int cols, const double* x,
                     double* y) {
  for (int k = 0; k < rows; ++k) {
    const double* row = a + static_cast<std::size_t>(k) * cols;
    double acc = 0.0;
    for (int j = 0; j < cols; ++j) acc += row[j] * x[j];
    y[k] += acc;
  }
}

// y[j] += sum_k A[k, j] g[k].
inline void gemv_t_acc(const double* a, int rows, int cols, const double* g,
                       double* y) {
  for (int k = 0; k < rows; ++k) {
    const double* row = a + static_cast<std::size_t>(k) * cols;
    const double gk = g[k];
    for (int j = 0; j < cols; ++j) y[j] += row[j] * gk;
  }
}

// A[k, j] += g[k] x[j].
inline void outer_acc(double* a, int rows, int cols, const double* g,
                      const double* x) {
  for (int k = 0; k < rows; ++k) {
    double* row = a + static_cast<std::size_t>(k) * cols;
    const double gk = g[k];
    for (int j = 0; j < cols; ++j) row[j] += gk * x[j];
  }
}

// Shared forward step that also reports the gate activations.
void gru_step(const GruLayerView& p, const double* x, const double* h,
              double* r, double* z, double* n, double* h_out) {
  const int m = p.hidden_dim;
  const int d = p.input_dim;
  double rh[64];
  double* rh_buf = m <= 64 ? rh : nullptr;
  std::vector<double> rh_heap;
  if (!rh_buf) {
    rh_heap.resize(m);
    rh_buf = rh_heap.data();
  }
  for (int k = 0; k < m; ++k) {
    r[k] = p.b_r[k];
    z[k] = p.b_z[k];
    n[k] = p.b_h[k];
  }
  gemv_acc(p.w_r, m, d, x, r);
  gemv_acc(p.u_r, m, m, h, r);
  gemv_acc(p.w_z, m, d, x, z);
  gemv_acc(p.u_z, m, m, h, z);
  for (int k = 0; k < m; ++k) {
    r[k] = logistic(r[k]);
    z[k] = logistic(z[k]);
    rh_buf[k] = r[k] * h[k];
  }
  gemv_acc(p.w_h, m, d, x, n);
  gemv_acc(p.u_h, m, m, rh_buf, n);
  for (int k = 0; k < m; ++k) {
    n[k] = std::tanh(n[k]);
    h_out[k] = z[k] * h[k] + (1.0 - z[k]) * n[k];
  }
}

}  // namespace

ParamLayout::ParamLayout(const NetShape& shape) : shape_(shape) {
  if (shape.input_dim < 1 || shape.hidden_dim < 1 || shape.layers < 1) {
    throw DimensionError("network dimensions must be positive");
  }
  const std::size_t m = shape.hidden_dim;
  std::size_t off = 0;
  for (int l = 0; l < shape.layers; ++l) {
    const std::size_t in = layer_input_dim(l);
    for (int gate = 0; gate < 3; ++gate) {
      offsets_.push_back(off);
      off += m * in;
      offsets_.push_back(off);
      off += m * m;
      offsets_.push_back(off);
      off += m;
    }
  }
  head_w_ = off;
  off += kNumActions * m;
  head_b_ = off;
  off += kNumActions;
  total_ = off;
}

void gru_cell(const GruLayerView& p, std::span<const double> x,
              std::span<const double> h, std::span<double> h_out) {
  const auto m = static_cast<std::size_t>(p.hidden_dim);
  if (x.size() != static_cast<std::size_t>(p.input_dim) || h.size() != m ||
      h_out.size() != m) {
    throw DimensionError("gru_cell: dimension mismatch");
  }
  std::vector<double> r(m), z(m), n(m);
  gru_step(p, x.data(), h.data(), r.data(), z.data(), n.data(), h_out.data());
}

AgentNet::AgentNet(const NetShape& shape)
    : layout_(shape), params_(layout_.size(), 0.0) {}

GruLayerView AgentNet::layer(int l) const {
  const double* base = params_.data();
  const auto& L = layout_;
  return GruLayerView{L.layer_input_dim(l),
                      shape().hidden_dim,
                      base + L.offset(l, ParamLayout::kWr),
                      base + L.offset(l, ParamLayout::kUr),
                      base + L.offset(l, ParamLayout::kBr),
                      base + L.offset(l, ParamLayout::kWz),
                      base + L.offset(l, ParamLayout::kUz),
                      base + L.offset(l, ParamLayout::kBz),
                      base + L.offset(l, ParamLayout::kWh),
                      base + L.offset(l, ParamLayout::kUh),
                      base + L.offset(l, ParamLayout::kBh)};
}

std::array<double, kNumActions> AgentNet::forward(
    HiddenState& hidden, std::span<const double> obs) const {
  const int m = shape().hidden_dim;
  const int layers = shape().layers;
  if (obs.size() != static_cast<std::size_t>(shape().input_dim)) {
    throw DimensionError("observation length " + std::to_string(obs.size()) +
                         " does not match input_dim " +
                         std::to_string(shape().input_dim));
  }
  if (hidden.size() != static_cast<std::size_t>(layers * m)) {
    throw DimensionError("hidden state has wrong size");
  }
  double stack_buf[4 * 64];
  std::vector<double> heap_buf;
  double* r = stack_buf;
  if (m > 64) {
    heap_buf.resize(4 * static_cast<std::size_t>(m));
    r = heap_buf.data();
  }
  double* z = r + m;
  double* n = z + m;
  double* h_new = n + m;
  const double* x = obs.data();
  for (int l = 0; l < layers; ++l) {
    double* h = hidden.data() + static_cast<std::size_t>(l) * m;
    gru_step(layer(l), x, h, r, z, n, h_new);
    std::copy(h_new, h_new + m, h);
    x = h;
  }
  std::array<double, kNumActions> q{};
  const double* hw = params_.data() + layout_.head_weight_offset();
  const double* hb = params_.data() + layout_.head_bias_offset();
  for (int a = 0; a < kNumActions; ++a) {
    double acc = hb[a];
    for (int k = 0; k < m; ++k) acc += hw[a * m + k] * x[k];
    q[a] = acc;
  }
  return q;
}

bool AgentNet::all_finite() const {
  return std::all_of(params_.begin(), params_.end(),
                     [](double v) { return std::isfinite(v); });
}

AgentNet init_params(const NetShape& shape, Rng& rng) {
  AgentNet net(shape);
  const auto& L = net.layout();
  auto p = net.params();
  const int m = shape.hidden_dim;
  auto fill = [&](std::size_t off, std::size_t count, int fan_in) {
    const double k = 1.0 / std::sqrt(static_cast<double>(fan_in));
    for (std::size_t i = 0; i < count; ++i) p[off + i] = rng.uniform(-k, k);
  };
  for (int l = 0; l < shape.layers; ++l) {
    const int in = L.layer_input_dim(l);
    for (auto [w, u] : {std::pair{ParamLayout::kWr, ParamLayout::kUr},
                        std::pair{ParamLayout::kWz, ParamLayout::kUz},
                        std::pair{ParamLayout::kWh, ParamLayout::kUh}}) {
      fill(L.offset(l, w), static_cast<std::size_t>(m) * in, in);
      fill(L.offset(l, u), static_cast<std::size_t>(m) * m, m);
    }
  }
  fill(L.head_weight_offset(), static_cast<std::size_t>(kNumActions) * m, m);
  return net;
}

ForwardTape unroll(const AgentNet& net, std::span<const double> inputs) {
  const NetShape& s = net.shape();
  const std::size_t d = s.input_dim;
  if (inputs.size() % d != 0) {
    throw DimensionError("unroll: inputs not a multiple of input_dim");
  }
  const int steps = static_cast<int>(inputs.size() / d);
  const std::size_t m = s.hidden_dim;
  const std::size_t lm = s.layers * m;

  ForwardTape tape;
  tape.steps = steps;
  tape.hidden.assign((steps + 1) * lm, 0.0);
  tape.r.assign(steps * lm, 0.0);
  tape.z.assign(steps * lm, 0.0);
  tape.n.assign(steps * lm, 0.0);
  tape.q.assign(steps * kNumActions, 0.0);

  const double* hw = net.params().data() + net.layout().head_weight_offset();
  const double* hb = net.params().data() + net.layout().head_bias_offset();
  for (int t = 0; t < steps; ++t) {
    const double* x = inputs.data() + t * d;
    for (int l = 0; l < s.layers; ++l) {
      const std::size_t slot = t * lm + l * m;
      const double* h_prev = tape.hidden.data() + slot;
      double* h_next = tape.hidden.data() + slot + lm;
      gru_step(net.layer(l), x, h_prev, tape.r.data() + slot,
               tape.z.data() + slot, tape.n.data() + slot, h_next);
      x = h_next;
    }
    for (int a = 0; a < kNumActions; ++a) {
      double acc = hb[a];
      for (std::size_t k = 0; k < m; ++k) acc += hw[a * m + k] * x[k];
      tape.q[t * kNumActions + a] = acc;
    }
  }
  return tape;
}

void bptt_gradients(const AgentNet& net, std::span<const double> inputs,
                    const ForwardTape& tape, std::span<const double> dq,
                    std::span<double> grad) {
  const NetShape& s = net.shape();
  const ParamLayout& L = net.layout();
  const int steps = tape.steps;
  const int m = s.hidden_dim;
  const std::size_t lm = static_cast<std::size_t>(s.layers) * m;
  if (dq.size() != static_cast<std::size_t>(steps) * kNumActions ||
      inputs.size() != static_cast<std::size_t>(steps) * s.input_dim ||
      grad.size() != L.size()) {
    throw DimensionError("bptt_gradients: dimension mismatch");
  }
  const double* params = net.params().data();
  const double* hw = params + L.head_weight_offset();
  double* g = grad.data();
  double* g_hw = g + L.head_weight_offset();
  double* g_hb = g + L.head_bias_offset();

  // carry[l]: dLoss/dh_l flowing back from the next time step.
  std::vector<double> carry(lm, 0.0);
  std::vector<double> dh(m), dx(std::max(m, s.input_dim));
  std::vector<double> da_r(m), da_z(m), da_h(m), d_rh(m), rh(m);

  for (int t = steps - 1; t >= 0; --t) {
    const double* h_top = tape.hidden.data() + (t + 1) * lm + (s.layers - 1) * m;
    // Head.
    std::fill(dh.begin(), dh.end(), 0.0);
    for (int a = 0; a < kNumActions; ++a) {
      const double gq = dq[t * kNumActions + a];
      if (gq == 0.0) continue;
      g_hb[a] += gq;
      for (int k = 0; k < m; ++k) {
        g_hw[a * m + k] += gq * h_top[k];
        dh[k] += gq * hw[a * m + k];
      }
    }
    for (int l = s.layers - 1; l >= 0; --l) {
      const std::size_t slot = t * lm + l * m;
      const double* h_prev = tape.hidden.data() + slot;
      const double* r = tape.r.data() + slot;
      const double* z = tape.z.data() + slot;
      const double* n = tape.n.data() + slot;
      const int in = L.layer_input_dim(l);
      const double* x = l == 0 ? inputs.data() + static_cast<std::size_t>(t) * s.input_dim
                               : tape.hidden.data() + (t + 1) * lm + (l - 1) * m;
      double* c = carry.data() + l * m;
      for (int k = 0; k < m; ++k) dh[k] += c[k];

      const GruLayerView p = net.layer(l);
      double* gW_r = g + L.offset(l, ParamLayout::kWr);
      double* gU_r = g + L.offset(l, ParamLayout::kUr);
      double* gb_r = g + L.offset(l, ParamLayout::kBr);
      double* gW_z = g + L.offset(l, ParamLayout::kWz);
      double* gU_z = g + L.offset(l, ParamLayout::kUz);
      double* gb_z = g + L.offset(l, ParamLayout::kBz);
      double* gW_h = g + L.offset(l, ParamLayout::kWh);
      double* gU_h = g + L.offset(l, ParamLayout::kUh);
      double* gb_h = g + L.offset(l, ParamLayout::kBh);

      // h' = z h + (1 - z) n
      for (int k = 0; k < m; ++k) {
        const double dz = dh[k] * (h_prev[k] - n[k]);
        const double dn = dh[k] * (1.0 - z[k]);
        da_z[k] = dz * z[k] * (1.0 - z[k]);
        da_h[k] = dn * (1.0 - n[k] * n[k]);
        c[k] = dh[k] * z[k];  // direct path to h_prev
        rh[k] = r[k] * h_prev[k];
        d_rh[k] = 0.0;
      }
      // Candidate: a_h = W_h x + U_h (r h) + b_h
      outer_acc(gW_h, m, in, da_h.data(), x);
      outer_acc(gU_h, m, m, da_h.data(), rh.data());
      for (int k = 0; k < m; ++k) gb_h[k] += da_h[k];
      gemv_t_acc(p.u_h, m, m, da_h.data(), d_rh.data());
      for (int k = 0; k < m; ++k) {
        c[k] += d_rh[k] * r[k];
        const double dr = d_rh[k] * h_prev[k];
        da_r[k] = dr * r[k] * (1.0 - r[k]);
      }
      // Gates.
      outer_acc(gW_z, m, in, da_z.data(), x);
      outer_acc(gU_z, m, m, da_z.data(), h_prev);
      outer_acc(gW_r, m, in, da_r.data(), x);
      outer_acc(gU_r, m, m, da_r.data(), h_prev);
      for (int k = 0; k < m; ++k) {
        gb_z[k] += da_z[k];
        gb_r[k] += da_r[k];
      }
      gemv_t_acc(p.u_z, m, m, da_z.data(), c);
      gemv_t_acc(p.u_r, m, m, da_r.data(), c);

      if (l > 0) {
        std::fill(dx.begin(), dx.begin() + in, 0.0);
        gemv_t_acc(p.w_h, m, in, da_h.data(), dx.data());
        gemv_t_acc(p.w_z, m, in, da_z.data(), dx.data());
        gemv_t_acc(p.w_r, m, in, da_r.data(), dx.data());
        std::copy(dx.begin(), dx.begin() + m, dh.begin());
      }
    }
  }
}

std::vector<double> bptt_gradients(const AgentNet& net,
                                   std::span<const double> inputs,
                                   std::span<const double> dq) {
  const ForwardTape tape = unroll(net, inputs);
  std::vector<double> grad(net.layout().size(), 0.0);
  bptt_gradients(net, inputs, tape, dq, grad);
  return grad;
}

std::vector<double> finite_diff_grad(
    const AgentNet& net, const std::function<double(const AgentNet&)>& loss,
    double step) {
  if (!(step > 0.0)) throw UsageError("finite difference step must be > 0");
  AgentNet probe = net;
  auto p = probe.params();
  std::vector<double> grad(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double saved = p[i];
    p[i] = saved + step;
    const double up = loss(probe);
    p[i] = saved - step;
    const double down = loss(probe);
    p[i] = saved;
    grad[i] = (up - down) / (2.0 * step);
  }
  return grad;
}

void adam_update(std::span<double> params, std::span<const double> grads,
                 AdamState& state, const AdamConfig& cfg) {
  if (grads.size() != params.size() || state.m.size() != params.size() ||
      state.v.size() != params.size()) {
    throw DimensionError("adam_update: dimension mismatch");
  }
  if (!(cfg.learning_rate > 0.0)) throw ConfigError("learning rate must be > 0");
  ++state.step;
  const double c1 = 1.0 - std::pow(cfg.beta1, static_cast<double>(state.step));
  const double c2 = 1.0 - std::pow(cfg.beta2, static_cast<double>(state.step));
  for (std::size_t i = 0; i < params.size(); ++i) {
    state.m[i] = cfg.beta1 * state.m[i] + (1.0 - cfg.beta1) * grads[i];
    state.v[i] = cfg.beta2 * state.v[i] + (1.0 - cfg.beta2) * grads[i] * grads[i];
    const double m_hat = state.m[i] / c1;
    const double v_hat = state.v[i] / c2;
    params[i] -= cfg.learning_rate * m_hat / (std::sqrt(v_hat) + cfg.epsilon);
  }
}

namespace {

std::uint64_t to_le(std::uint64_t v) {
  if constexpr (std::endian::native == std::endian::little) {
    return v;
  } else {
    std::uint64_t out = 0;
    for (int b = 0; b < 8; ++b) out |= ((v >> (8 * b)) & 0xFF) << (8 * (7 - b));
    return out;
  }
}

}  // namespace

void write_params(std::ostream& os, const AgentNet& net) {
  for (double v : net.params()) {
    const std::uint64_t bits = to_le(std::bit_cast<std::uint64_t>(v));
    os.write(reinterpret_cast<const char*>(&bits), sizeof bits);
  }
}

AgentNet read_params(std::istream& is, const NetShape& shape) {
  AgentNet net(shape);
  for (double& v : net.params()) {
    std::uint64_t bits = 0;
    if (!is.read(reinterpret_cast<char*>(&bits), sizeof bits)) {
      throw SnapshotError("parameter file truncated");
    }
    v = std::bit_cast<double>(to_le(bits));
  }
  if (is.peek() != std::char_traits<char>::eof()) {
    throw SnapshotError("parameter file has trailing bytes");
  }
  return net;
}

}  // namespace socdiff
