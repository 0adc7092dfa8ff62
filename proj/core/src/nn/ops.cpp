#include "qsar/nn/ops.hpp"

#include <cmath>
#include <stdexcept>

namespace qsar::nn {

namespace {

void check(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

constexpr double inv_sqrt2 = 0.7071067811865475244;
constexpr double inv_sqrt2pi = 0.3989422804014326779;

int rows_of(const Tensor& x) {
  return x.shape().size() == 1 ? 1 : x.dim(0);
}
int cols_of(const Tensor& x) {
  return x.shape().size() == 1 ? x.dim(0) : x.dim(1);
}

}  // namespace

Tensor add(const Tensor& a, const Tensor& b) {
  check(a.shape() == b.shape(), "add: shape mismatch");
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = a.values()[i] + b.values()[i];
  }
  return detail::make_op(a.shape(), std::move(out), {a, b},
                         [a, b](detail::Node& self) mutable {
                           for (std::size_t i = 0; i < self.size(); ++i) {
                             if (a.requires_grad()) a.grad()[i] += self.grad[i];
                             if (b.requires_grad()) b.grad()[i] += self.grad[i];
                           }
                         });
}

Tensor add_rowvec(const Tensor& x, const Tensor& v) {
  check(x.shape().size() == 2 && v.shape().size() == 1 && x.dim(1) == v.dim(0),
        "add_rowvec: shape mismatch");
  const int R = x.dim(0), C = x.dim(1);
  std::vector<double> out(x.size());
  for (int r = 0; r < R; ++r) {
    for (int c = 0; c < C; ++c) {
      out[r * C + c] = x.values()[r * C + c] + v.values()[c];
    }
  }
  return detail::make_op(
      x.shape(), std::move(out), {x, v}, [x, v, R, C](detail::Node& self) mutable {
        for (int r = 0; r < R; ++r) {
          for (int c = 0; c < C; ++c) {
            const double g = self.grad[r * C + c];
            if (x.requires_grad()) x.grad()[r * C + c] += g;
            if (v.requires_grad()) v.grad()[c] += g;
          }
        }
      });
}

Tensor mul_scalar(const Tensor& x, double s) { return affine(x, s, 0.0); }

Tensor affine(const Tensor& x, double a, double b) {
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a * x.values()[i] + b;
  return detail::make_op(x.shape(), std::move(out), {x},
                         [x, a](detail::Node& self) mutable {
                           if (!x.requires_grad()) return;
                           for (std::size_t i = 0; i < self.size(); ++i) {
                             x.grad()[i] += a * self.grad[i];
                           }
                         });
}

Tensor gelu(const Tensor& x) {
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double v = x.values()[i];
    out[i] = 0.5 * v * (1.0 + std::erf(v * inv_sqrt2));
  }
  return detail::make_op(
      x.shape(), std::move(out), {x}, [x](detail::Node& self) mutable {
        if (!x.requires_grad()) return;
        for (std::size_t i = 0; i < self.size(); ++i) {
          const double v = x.values()[i];
          const double cdf = 0.5 * (1.0 + std::erf(v * inv_sqrt2));
          const double pdf = inv_sqrt2pi * std::exp(-0.5 * v * v);
          x.grad()[i] += self.grad[i] * (cdf + v * pdf);
        }
      });
}

Tensor matmul(const Tensor& a, const Tensor& b) {
  check(a.shape().size() == 2 && b.shape().size() == 2 && a.dim(1) == b.dim(0),
        "matmul: shape mismatch");
  const int R = a.dim(0), K = a.dim(1), C = b.dim(1);
  std::vector<double> out(static_cast<std::size_t>(R) * C, 0.0);
  for (int r = 0; r < R; ++r) {
    for (int k = 0; k < K; ++k) {
      const double av = a.values()[r * K + k];
      for (int c = 0; c < C; ++c) {
        out[r * C + c] += av * b.values()[k * C + c];
      }
    }
  }
  return detail::make_op(
      {R, C}, std::move(out), {a, b}, [a, b, R, K, C](detail::Node& self) mutable {
        if (a.requires_grad()) {
          for (int r = 0; r < R; ++r) {
            for (int c = 0; c < C; ++c) {
              const double g = self.grad[r * C + c];
              for (int k = 0; k < K; ++k) {
                a.grad()[r * K + k] += g * b.values()[k * C + c];
              }
            }
          }
        }
        if (b.requires_grad()) {
          for (int r = 0; r < R; ++r) {
            for (int k = 0; k < K; ++k) {
              const double av = a.values()[r * K + k];
              for (int c = 0; c < C; ++c) {
                b.grad()[k * C + c] += av * self.grad[r * C + c];
              }
            }
          }
        }
      });
}

Tensor transpose(const Tensor& a) {
  check(a.shape().size() == 2, "transpose: expects 2D");
  const int R = a.dim(0), C = a.dim(1);
  std::vector<double> out(a.size());
  for (int r = 0; r < R; ++r) {
    for (int c = 0; c < C; ++c) out[c * R + r] = a.values()[r * C + c];
  }
  return detail::make_op({C, R}, std::move(out), {a},
                         [a, R, C](detail::Node& self) mutable {
                           if (!a.requires_grad()) return;
                           for (int r = 0; r < R; ++r) {
                             for (int c = 0; c < C; ++c) {
                               a.grad()[r * C + c] += self.grad[c * R + r];
                             }
                           }
                         });
}

Tensor linear(const Tensor& x, const Tensor& W, const Tensor& b) {
  check(W.shape().size() == 2 && b.shape().size() == 1 && W.dim(1) == b.dim(0),
        "linear: weight/bias mismatch");
  const bool vec = x.shape().size() == 1;
  check(cols_of(x) == W.dim(0), "linear: input width mismatch");
  const int R = rows_of(x), in = W.dim(0), out_w = W.dim(1);
  std::vector<double> out(static_cast<std::size_t>(R) * out_w);
  for (int r = 0; r < R; ++r) {
    for (int c = 0; c < out_w; ++c) {
      double s = b.values()[c];
      for (int k = 0; k < in; ++k) {
        s += x.values()[r * in + k] * W.values()[k * out_w + c];
      }
      out[r * out_w + c] = s;
    }
  }
  std::vector<int> shape = vec ? std::vector<int>{out_w}
                               : std::vector<int>{R, out_w};
  return detail::make_op(
      std::move(shape), std::move(out), {x, W, b},
      [x, W, b, R, in, out_w](detail::Node& self) mutable {
        for (int r = 0; r < R; ++r) {
          for (int c = 0; c < out_w; ++c) {
            const double g = self.grad[r * out_w + c];
            if (b.requires_grad()) b.grad()[c] += g;
            if (x.requires_grad()) {
              for (int k = 0; k < in; ++k) {
                x.grad()[r * in + k] += g * W.values()[k * out_w + c];
              }
            }
            if (W.requires_grad()) {
              for (int k = 0; k < in; ++k) {
                W.grad()[k * out_w + c] += g * x.values()[r * in + k];
              }
            }
          }
        }
      });
}

Tensor row(const Tensor& x, int r) {
  check(x.shape().size() == 2 && r >= 0 && r < x.dim(0), "row: out of range");
  const int C = x.dim(1);
  std::vector<double> out(x.values().begin() + static_cast<std::size_t>(r) * C,
                          x.values().begin() + static_cast<std::size_t>(r + 1) * C);
  return detail::make_op({C}, std::move(out), {x},
                         [x, r, C](detail::Node& self) mutable {
                           if (!x.requires_grad()) return;
                           for (int c = 0; c < C; ++c) {
                             x.grad()[r * C + c] += self.grad[c];
                           }
                         });
}

Tensor slice_cols(const Tensor& x, int c0, int len) {
  check(x.shape().size() == 2 && c0 >= 0 && len > 0 && c0 + len <= x.dim(1),
        "slice_cols: out of range");
  const int R = x.dim(0), C = x.dim(1);
  std::vector<double> out(static_cast<std::size_t>(R) * len);
  for (int r = 0; r < R; ++r) {
    for (int c = 0; c < len; ++c) out[r * len + c] = x.values()[r * C + c0 + c];
  }
  return detail::make_op({R, len}, std::move(out), {x},
                         [x, c0, len, R, C](detail::Node& self) mutable {
                           if (!x.requires_grad()) return;
                           for (int r = 0; r < R; ++r) {
                             for (int c = 0; c < len; ++c) {
                               x.grad()[r * C + c0 + c] += self.grad[r * len + c];
                             }
                           }
                         });
}

Tensor concat_cols(const std::vector<Tensor>& parts) {
  check(!parts.empty(), "concat_cols: empty");
  const int R = parts[0].dim(0);
  int total = 0;
  for (const auto& p : parts) {
    check(p.shape().size() == 2 && p.dim(0) == R, "concat_cols: row mismatch");
    total += p.dim(1);
  }
  std::vector<double> out(static_cast<std::size_t>(R) * total);
  int off = 0;
  for (const auto& p : parts) {
    const int C = p.dim(1);
    for (int r = 0; r < R; ++r) {
      for (int c = 0; c < C; ++c) out[r * total + off + c] = p.values()[r * C + c];
    }
    off += C;
  }
  return detail::make_op(
      {R, total}, std::move(out), parts, [parts, R, total](detail::Node& self) mutable {
        int off = 0;
        for (auto& p : parts) {
          const int C = p.dim(1);
          if (p.requires_grad()) {
            for (int r = 0; r < R; ++r) {
              for (int c = 0; c < C; ++c) {
                p.grad()[r * C + c] += self.grad[r * total + off + c];
              }
            }
          }
          off += C;
        }
      });
}

Tensor concat_rows(const Tensor& a, const Tensor& b) {
  check(a.shape().size() == 2 && b.shape().size() == 2 && a.dim(1) == b.dim(1),
        "concat_rows: column mismatch");
  const int C = a.dim(1);
  std::vector<double> out;
  out.reserve(a.size() + b.size());
  out.insert(out.end(), a.values().begin(), a.values().end());
  out.insert(out.end(), b.values().begin(), b.values().end());
  return detail::make_op({a.dim(0) + b.dim(0), C}, std::move(out), {a, b},
                         [a, b](detail::Node& self) mutable {
                           const std::size_t na = a.size();
                           if (a.requires_grad()) {
                             for (std::size_t i = 0; i < na; ++i) {
                               a.grad()[i] += self.grad[i];
                             }
                           }
                           if (b.requires_grad()) {
                             for (std::size_t i = 0; i < b.size(); ++i) {
                               b.grad()[i] += self.grad[na + i];
                             }
                           }
                         });
}

Tensor stack_rows(const std::vector<Tensor>& rows) {
  check(!rows.empty(), "stack_rows: empty");
  const int C = rows[0].dim(0);
  std::vector<double> out;
  out.reserve(rows.size() * C);
  for (const auto& r : rows) {
    check(r.shape().size() == 1 && r.dim(0) == C, "stack_rows: width mismatch");
    out.insert(out.end(), r.values().begin(), r.values().end());
  }
  return detail::make_op({static_cast<int>(rows.size()), C}, std::move(out),
                         rows, [rows, C](detail::Node& self) mutable {
                           for (std::size_t r = 0; r < rows.size(); ++r) {
                             if (!rows[r].requires_grad()) continue;
                             for (int c = 0; c < C; ++c) {
                               rows[r].grad()[c] += self.grad[r * C + c];
                             }
                           }
                         });
}

Tensor concat_vec(const std::vector<Tensor>& parts) {
  check(!parts.empty(), "concat_vec: empty");
  std::vector<double> out;
  for (const auto& p : parts) {
    check(p.shape().size() == 1, "concat_vec: expects 1D parts");
    out.insert(out.end(), p.values().begin(), p.values().end());
  }
  const int total = static_cast<int>(out.size());
  return detail::make_op({total}, std::move(out), parts,
                         [parts](detail::Node& self) mutable {
                           std::size_t off = 0;
                           for (auto& p : parts) {
                             if (p.requires_grad()) {
                               for (std::size_t i = 0; i < p.size(); ++i) {
                                 p.grad()[i] += self.grad[off + i];
                               }
                             }
                             off += p.size();
                           }
                         });
}

Tensor softmax_rows(const Tensor& x) {
  check(x.shape().size() == 2, "softmax_rows: expects 2D");
  const int R = x.dim(0), C = x.dim(1);
  std::vector<double> out(x.size());
  for (int r = 0; r < R; ++r) {
    double mx = x.values()[r * C];
    for (int c = 1; c < C; ++c) mx = std::max(mx, x.values()[r * C + c]);
    double sum = 0.0;
    for (int c = 0; c < C; ++c) {
      out[r * C + c] = std::exp(x.values()[r * C + c] - mx);
      sum += out[r * C + c];
    }
    for (int c = 0; c < C; ++c) out[r * C + c] /= sum;
  }
  return detail::make_op(
      x.shape(), std::move(out), {x}, [x, R, C](detail::Node& self) mutable {
        if (!x.requires_grad()) return;
        for (int r = 0; r < R; ++r) {
          double dot = 0.0;
          for (int c = 0; c < C; ++c) {
            dot += self.grad[r * C + c] * self.values[r * C + c];
          }
          for (int c = 0; c < C; ++c) {
            x.grad()[r * C + c] +=
                self.values[r * C + c] * (self.grad[r * C + c] - dot);
          }
        }
      });
}

Tensor layer_norm(const Tensor& x, const Tensor& gamma, const Tensor& beta,
                  double eps) {
  check(x.shape().size() == 2 && gamma.shape().size() == 1 &&
            beta.shape().size() == 1 && x.dim(1) == gamma.dim(0) &&
            x.dim(1) == beta.dim(0),
        "layer_norm: shape mismatch");
  const int R = x.dim(0), C = x.dim(1);
  std::vector<double> out(x.size());
  std::vector<double> xhat(x.size());
  std::vector<double> inv_sigma(R);
  for (int r = 0; r < R; ++r) {
    double mean = 0.0;
    for (int c = 0; c < C; ++c) mean += x.values()[r * C + c];
    mean /= C;
    double var = 0.0;
    for (int c = 0; c < C; ++c) {
      const double d = x.values()[r * C + c] - mean;
      var += d * d;
    }
    var /= C;
    inv_sigma[r] = 1.0 / std::sqrt(var + eps);
    for (int c = 0; c < C; ++c) {
      xhat[r * C + c] = (x.values()[r * C + c] - mean) * inv_sigma[r];
      out[r * C + c] = gamma.values()[c] * xhat[r * C + c] + beta.values()[c];
    }
  }
  return detail::make_op(
      x.shape(), std::move(out), {x, gamma, beta},
      [x, gamma, beta, R, C, xhat = std::move(xhat),
       inv_sigma = std::move(inv_sigma)](detail::Node& self) mutable {
        for (int r = 0; r < R; ++r) {
          double mean_dxhat = 0.0, mean_dxhat_xhat = 0.0;
          for (int c = 0; c < C; ++c) {
            const double g = self.grad[r * C + c];
            const double xh = xhat[r * C + c];
            if (gamma.requires_grad()) gamma.grad()[c] += g * xh;
            if (beta.requires_grad()) beta.grad()[c] += g;
            const double dxh = g * gamma.values()[c];
            mean_dxhat += dxh;
            mean_dxhat_xhat += dxh * xh;
          }
          if (!x.requires_grad()) continue;
          mean_dxhat /= C;
          mean_dxhat_xhat /= C;
          for (int c = 0; c < C; ++c) {
            const double dxh = self.grad[r * C + c] * gamma.values()[c];
            x.grad()[r * C + c] += inv_sigma[r] * (dxh - mean_dxhat -
                                                   xhat[r * C + c] * mean_dxhat_xhat);
          }
        }
      });
}

Tensor dropout(const Tensor& x, double p, bool train, std::mt19937_64& rng) {
  check(p >= 0.0 && p < 1.0, "dropout: p must be in [0,1)");
  if (!train || p == 0.0) return x;
  const double scale = 1.0 / (1.0 - p);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  std::vector<double> mask(x.size());
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    mask[i] = dist(rng) < p ? 0.0 : scale;
    out[i] = x.values()[i] * mask[i];
  }
  return detail::make_op(x.shape(), std::move(out), {x},
                         [x, mask = std::move(mask)](detail::Node& self) mutable {
                           if (!x.requires_grad()) return;
                           for (std::size_t i = 0; i < self.size(); ++i) {
                             x.grad()[i] += self.grad[i] * mask[i];
                           }
                         });
}

Tensor softmax_cross_entropy(const Tensor& logits, int label, double weight) {
  check(logits.shape().size() == 1, "softmax_cross_entropy: expects 1D logits");
  const int C = logits.dim(0);
  check(label >= 0 && label < C, "softmax_cross_entropy: label out of range");
  double mx = logits.values()[0];
  for (int c = 1; c < C; ++c) mx = std::max(mx, logits.values()[c]);
  double sum = 0.0;
  std::vector<double> probs(C);
  for (int c = 0; c < C; ++c) {
    probs[c] = std::exp(logits.values()[c] - mx);
    sum += probs[c];
  }
  for (int c = 0; c < C; ++c) probs[c] /= sum;
  const double loss = -weight * (logits.values()[label] - mx - std::log(sum));
  return detail::make_op(
      {1}, {loss}, {logits},
      [logits, label, weight, probs = std::move(probs), C](detail::Node& self) mutable {
        if (!logits.requires_grad()) return;
        const double g = self.grad[0] * weight;
        for (int c = 0; c < C; ++c) {
          logits.grad()[c] += g * (probs[c] - (c == label ? 1.0 : 0.0));
        }
      });
}

}  // namespace qsar::nn
