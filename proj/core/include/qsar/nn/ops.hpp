#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "qsar/nn/tensor.hpp"

namespace qsar::nn {

// Elementwise / arithmetic
Tensor add(const Tensor& a, const Tensor& b);
Tensor add_rowvec(const Tensor& x, const Tensor& v);  // x[R,C] + v[C] per row
Tensor mul_scalar(const Tensor& x, double s);
Tensor affine(const Tensor& x, double a, double b);  // a*x + b elementwise
Tensor gelu(const Tensor& x);

// Linear algebra
Tensor matmul(const Tensor& a, const Tensor& b);  // [R,K] x [K,C]
Tensor transpose(const Tensor& a);                // [R,C] -> [C,R]

/// x[*, in] @ W[in, out] + b[out]; 1D x is treated as a single row and the
/// result stays 1D.
Tensor linear(const Tensor& x, const Tensor& W, const Tensor& b);

// Shape plumbing
Tensor row(const Tensor& x, int r);                       // [R,C] -> [C]
Tensor slice_cols(const Tensor& x, int c0, int len);      // [R,C] -> [R,len]
Tensor concat_cols(const std::vector<Tensor>& parts);     // [R,Ci] -> [R,sum]
Tensor concat_rows(const Tensor& a, const Tensor& b);     // [Ra,C],[Rb,C]
Tensor stack_rows(const std::vector<Tensor>& rows);       // n x [C] -> [n,C]
Tensor concat_vec(const std::vector<Tensor>& parts);      // 1D concat

// Normalization / attention pieces
Tensor softmax_rows(const Tensor& x);
Tensor layer_norm(const Tensor& x, const Tensor& gamma, const Tensor& beta,
                  double eps = 1e-5);

/// Inverted dropout: train mode samples a keep mask and scales by 1/(1-p);
/// eval mode (or p == 0) is the identity.
Tensor dropout(const Tensor& x, double p, bool train, std::mt19937_64& rng);

/// Weighted negative log-softmax at `label`; weight defaults to 1.
Tensor softmax_cross_entropy(const Tensor& logits, int label,
                             double weight = 1.0);

}  // namespace qsar::nn
