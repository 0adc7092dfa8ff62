#pragma once

#include <cstdint>
#include <vector>

#include "qsar/nn/registry.hpp"

namespace qsar::nn {

struct TrainConfig {
  double learning_rate = 1e-4;
  double eta_min = 1e-6;
  int epochs = 40;
  int batch_size = 16;
  double dropout_p = 0.1;
  double adam_beta1 = 0.9;
  double adam_beta2 = 0.999;
  double adam_eps = 1e-8;
  std::uint64_t seed = 0;
  bool class_weighted = false;

  void validate() const;
};

/// lr(t) = eta_min + (lr - eta_min)/2 * (1 + cos(pi t / t_total)).
double cosine_lr(long t, long t_total, double lr, double eta_min);

/// Adam with bias correction over all registry entries. The step count is
/// internal; learning rate is supplied per step (cosine schedule lives in
/// the training loop).
class Adam {
 public:
  Adam(double beta1 = 0.9, double beta2 = 0.999, double eps = 1e-8)
      : beta1_(beta1), beta2_(beta2), eps_(eps) {}

  void step(ParamRegistry& registry, double lr);
  long t() const { return t_; }

 private:
  double beta1_, beta2_, eps_;
  long t_ = 0;
  std::vector<std::vector<double>> m_, v_;
};

}  // namespace qsar::nn
