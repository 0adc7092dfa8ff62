#include "qsar/train/loop.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "qsar/nn/ops.hpp"
#include "qsar/util/rng.hpp"

namespace qsar::train {

std::vector<double> class_weights(const std::vector<data::ComplexChip>& chips,
                                  int n_classes) {
  std::vector<long> counts(n_classes, 0);
  for (const auto& c : chips) {
    if (c.split == data::Split::Train) counts[c.label] += 1;
  }
  std::vector<double> w(n_classes, 0.0);
  double sum = 0.0;
  for (int c = 0; c < n_classes; ++c) {
    if (counts[c] == 0) {
      throw std::invalid_argument("class_weights: class missing from train split");
    }
    w[c] = 1.0 / static_cast<double>(counts[c]);
    sum += w[c];
  }
  const double mean = sum / n_classes;
  for (double& x : w) x /= mean;
  return w;
}

TrainResult fit(models::ModelBundle& bundle,
                const std::vector<data::ComplexChip>& chips,
                const nn::TrainConfig& cfg, const EpochCallback& on_epoch) {
  cfg.validate();

  std::vector<std::size_t> train_idx;
  for (std::size_t i = 0; i < chips.size(); ++i) {
    if (chips[i].split == data::Split::Train) train_idx.push_back(i);
  }
  if (train_idx.empty()) throw std::invalid_argument("fit: empty train split");

  std::vector<double> weights(bundle.n_classes, 1.0);
  if (cfg.class_weighted) weights = class_weights(chips, bundle.n_classes);

  const long n_train = static_cast<long>(train_idx.size());
  const long steps_per_epoch = (n_train + cfg.batch_size - 1) / cfg.batch_size;
  const long total_steps = static_cast<long>(cfg.epochs) * steps_per_epoch;

  nn::Adam adam(cfg.adam_beta1, cfg.adam_beta2, cfg.adam_eps);
  TrainResult result;
  long step = 0;

  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    const auto t0 = std::chrono::steady_clock::now();
    auto shuffle_rng = util::make_rng(cfg.seed, "shuffle", epoch);
    std::vector<std::size_t> order = train_idx;
    std::shuffle(order.begin(), order.end(), shuffle_rng);

    double loss_sum = 0.0;
    long correct = 0;
    RunRecord record;
    record.epoch = epoch;

    for (long b = 0; b < steps_per_epoch; ++b) {
      const std::size_t begin = static_cast<std::size_t>(b) * cfg.batch_size;
      const std::size_t end =
          std::min(order.size(), begin + static_cast<std::size_t>(cfg.batch_size));
      const double inv_batch = 1.0 / static_cast<double>(end - begin);

      bundle.registry.zero_grads();
      for (std::size_t k = begin; k < end; ++k) {
        const auto& chip = chips[order[k]];
        auto dropout_rng = util::make_rng(cfg.seed, "dropout", epoch, order[k]);
        models::ForwardOptions opts;
        opts.train_mode = true;
        opts.dropout_p = cfg.dropout_p;
        opts.dropout_rng = &dropout_rng;
        nn::Tensor scores = models::forward(bundle, chip, opts);
        nn::Tensor loss = nn::softmax_cross_entropy(scores, chip.label,
                                                    weights[chip.label]);
        const double loss_val = loss.item();
        if (!std::isfinite(loss_val)) {
          std::ostringstream msg;
          msg << "non-finite loss at epoch " << epoch << ", step " << step
              << ", sample " << order[k];
          result.diverged = true;
          result.diagnostic = msg.str();
          return result;
        }
        loss_sum += loss_val;
        if (models::predict(scores.values()) == chip.label) ++correct;
        nn::mul_scalar(loss, inv_batch).backward();
      }

      const double lr = nn::cosine_lr(step, total_steps - 1, cfg.learning_rate,
                                      cfg.eta_min);
      record.lr = lr;
      if (b == steps_per_epoch - 1) {
        record.grad_norms = grad_norms(bundle.registry);
      }
      adam.step(bundle.registry, lr);
      ++step;
    }

    record.train_loss = loss_sum / static_cast<double>(n_train);
    record.train_accuracy = static_cast<double>(correct) / n_train;
    record.test_accuracy =
        evaluate(bundle, chips, data::Split::Test).accuracy;
    record.wall_time_sec =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    result.history.push_back(record);
    if (on_epoch) on_epoch(result.history.back());
  }
  return result;
}

}  // namespace qsar::train
