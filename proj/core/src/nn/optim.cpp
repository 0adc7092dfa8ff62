#include "qsar/nn/optim.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qsar::nn {

void TrainConfig::validate() const {
  if (dropout_p < 0.0 || dropout_p >= 1.0) {
    throw std::invalid_argument("TrainConfig: dropout_p must be in [0,1)");
  }
  if (eta_min > learning_rate) {
    throw std::invalid_argument("TrainConfig: eta_min must be <= learning_rate");
  }
  if (epochs < 1 || batch_size < 1) {
    throw std::invalid_argument("TrainConfig: epochs and batch_size must be >= 1");
  }
}

double cosine_lr(long t, long t_total, double lr, double eta_min) {
  if (t_total <= 0) return lr;
  if (t >= t_total) return eta_min;
  const double phase = std::numbers::pi * static_cast<double>(t) /
                       static_cast<double>(t_total);
  return eta_min + 0.5 * (lr - eta_min) * (1.0 + std::cos(phase));
}

void Adam::step(ParamRegistry& registry, double lr) {
  auto& entries = registry.entries();
  if (m_.size() != entries.size()) {
    m_.resize(entries.size());
    v_.resize(entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) {
      m_[i].assign(entries[i].tensor.size(), 0.0);
      v_[i].assign(entries[i].tensor.size(), 0.0);
    }
  }
  ++t_;
  const double bc1 = 1.0 - std::pow(beta1_, static_cast<double>(t_));
  const double bc2 = 1.0 - std::pow(beta2_, static_cast<double>(t_));
  for (std::size_t i = 0; i < entries.size(); ++i) {
    auto& w = entries[i].tensor.values();
    const auto& g = entries[i].tensor.grad();
    for (std::size_t k = 0; k < w.size(); ++k) {
      m_[i][k] = beta1_ * m_[i][k] + (1.0 - beta1_) * g[k];
      v_[i][k] = beta2_ * v_[i][k] + (1.0 - beta2_) * g[k] * g[k];
      const double mhat = m_[i][k] / bc1;
      const double vhat = v_[i][k] / bc2;
      w[k] -= lr * mhat / (std::sqrt(vhat) + eps_);
    }
  }
}

}  // namespace qsar::nn
