#include "qsar/nn/layers.hpp"

#include <cmath>
#include <stdexcept>

namespace qsar::nn {

Tensor init_uniform_fanin(std::vector<int> shape, int fan_in,
                          std::mt19937_64& rng) {
  const double bound = 1.0 / std::sqrt(static_cast<double>(fan_in));
  std::uniform_real_distribution<double> dist(-bound, bound);
  std::size_t n = 1;
  for (int d : shape) n *= static_cast<std::size_t>(d);
  std::vector<double> v(n);
  for (auto& x : v) x = dist(rng);
  return Tensor::leaf(std::move(shape), std::move(v), true);
}

Tensor init_normal(std::vector<int> shape, double stddev, std::mt19937_64& rng) {
  std::normal_distribution<double> dist(0.0, stddev);
  std::size_t n = 1;
  for (int d : shape) n *= static_cast<std::size_t>(d);
  std::vector<double> v(n);
  for (auto& x : v) x = dist(rng);
  return Tensor::leaf(std::move(shape), std::move(v), true);
}

Linear Linear::create(ParamRegistry& reg, const std::string& prefix, int in,
                      int out, std::mt19937_64& rng) {
  Linear l;
  l.W = reg.add(prefix + "/W", init_uniform_fanin({in, out}, in, rng),
                Partition::Classical);
  l.b = reg.add(prefix + "/b", Tensor::zeros({out}, true), Partition::Classical);
  return l;
}

TransformerBlock TransformerBlock::create(ParamRegistry& reg,
                                          const std::string& prefix, int d,
                                          int heads, std::mt19937_64& rng) {
  if (d % heads != 0) {
    throw std::invalid_argument("TransformerBlock: heads must divide d");
  }
  TransformerBlock t;
  t.d = d;
  t.heads = heads;
  auto ones = [](int n) {
    return Tensor::leaf({n}, std::vector<double>(n, 1.0), true);
  };
  t.ln1_g = reg.add(prefix + "/ln1_g", ones(d), Partition::Classical);
  t.ln1_b = reg.add(prefix + "/ln1_b", Tensor::zeros({d}, true), Partition::Classical);
  t.Wqkv = reg.add(prefix + "/Wqkv", init_uniform_fanin({d, 3 * d}, d, rng),
                   Partition::Classical);
  t.bqkv = reg.add(prefix + "/bqkv", Tensor::zeros({3 * d}, true), Partition::Classical);
  t.Wo = reg.add(prefix + "/Wo", init_uniform_fanin({d, d}, d, rng),
                 Partition::Classical);
  t.bo = reg.add(prefix + "/bo", Tensor::zeros({d}, true), Partition::Classical);
  t.ln2_g = reg.add(prefix + "/ln2_g", ones(d), Partition::Classical);
  t.ln2_b = reg.add(prefix + "/ln2_b", Tensor::zeros({d}, true), Partition::Classical);
  const int hidden = 4 * d;
  t.W1 = reg.add(prefix + "/W1", init_uniform_fanin({d, hidden}, d, rng),
                 Partition::Classical);
  t.b1 = reg.add(prefix + "/b1", Tensor::zeros({hidden}, true), Partition::Classical);
  t.W2 = reg.add(prefix + "/W2", init_uniform_fanin({hidden, d}, hidden, rng),
                 Partition::Classical);
  t.b2 = reg.add(prefix + "/b2", Tensor::zeros({d}, true), Partition::Classical);
  return t;
}

Tensor TransformerBlock::forward(const Tensor& tokens, double dropout_p,
                                 bool train, std::mt19937_64& rng) const {
  if (tokens.shape().size() != 2 || tokens.dim(1) != d) {
    throw std::invalid_argument("TransformerBlock: bad token shape");
  }
  const int dh = d / heads;
  const double att_scale = 1.0 / std::sqrt(static_cast<double>(dh));

  Tensor h = layer_norm(tokens, ln1_g, ln1_b);
  Tensor qkv = linear(h, Wqkv, bqkv);
  std::vector<Tensor> ctx;
  ctx.reserve(heads);
  for (int i = 0; i < heads; ++i) {
    Tensor q = slice_cols(qkv, i * dh, dh);
    Tensor k = slice_cols(qkv, d + i * dh, dh);
    Tensor v = slice_cols(qkv, 2 * d + i * dh, dh);
    Tensor att = softmax_rows(mul_scalar(matmul(q, transpose(k)), att_scale));
    ctx.push_back(matmul(att, v));
  }
  Tensor attn_out = dropout(linear(concat_cols(ctx), Wo, bo), dropout_p, train, rng);
  Tensor x = add(tokens, attn_out);

  Tensor h2 = layer_norm(x, ln2_g, ln2_b);
  Tensor f = dropout(gelu(linear(h2, W1, b1)), dropout_p, train, rng);
  Tensor ffn_out = linear(f, W2, b2);
  return add(x, ffn_out);
}

MlpHead MlpHead::create(ParamRegistry& reg, const std::string& prefix, int in,
                        int hidden, int out, std::mt19937_64& rng) {
  MlpHead m;
  m.fc1 = Linear::create(reg, prefix + "/fc1", in, hidden, rng);
  m.fc2 = Linear::create(reg, prefix + "/fc2", hidden, out, rng);
  return m;
}

}  // namespace qsar::nn
