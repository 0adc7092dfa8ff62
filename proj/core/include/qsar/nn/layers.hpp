#pragma once

#include <random>
#include <string>

#include "qsar/nn/ops.hpp"
#include "qsar/nn/registry.hpp"

namespace qsar::nn {

/// uniform(-1/sqrt(fan_in), +1/sqrt(fan_in))
Tensor init_uniform_fanin(std::vector<int> shape, int fan_in,
                          std::mt19937_64& rng);
Tensor init_normal(std::vector<int> shape, double stddev, std::mt19937_64& rng);

/// Registers W[in,out] (fan-in init) and b[out] (zeros) under
/// "<prefix>/W" and "<prefix>/b".
struct Linear {
  Tensor W, b;
  static Linear create(ParamRegistry& reg, const std::string& prefix, int in,
                       int out, std::mt19937_64& rng);
  Tensor forward(const Tensor& x) const { return linear(x, W, b); }
};

/// Pre-norm residual transformer block: x + Attn(LN(x)), then + FFN(LN(.)).
/// Multi-head self-attention
/// with `heads` heads of width d/heads; FFN hidden is 4d with GELU.
/// Dropout after the attention projection and inside the FFN, train only.
struct TransformerBlock {
  int d = 0, heads = 0;
  Tensor ln1_g, ln1_b;
  Tensor Wqkv, bqkv, Wo, bo;
  Tensor ln2_g, ln2_b;
  Tensor W1, b1, W2, b2;

  static TransformerBlock create(ParamRegistry& reg, const std::string& prefix,
                                 int d, int heads, std::mt19937_64& rng);
  Tensor forward(const Tensor& tokens, double dropout_p, bool train,
                 std::mt19937_64& rng) const;
};

/// in -> hidden (GELU) -> out.
struct MlpHead {
  Linear fc1, fc2;
  static MlpHead create(ParamRegistry& reg, const std::string& prefix, int in,
                        int hidden, int out, std::mt19937_64& rng);
  Tensor forward(const Tensor& x) const {
    return fc2.forward(gelu(fc1.forward(x)));
  }
};

}  // namespace qsar::nn
