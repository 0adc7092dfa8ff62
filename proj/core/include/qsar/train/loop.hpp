#pragma once

#include <functional>
#include <string>
#include <vector>

#include "qsar/data/chip.hpp"
#include "qsar/models/bundle.hpp"
#include "qsar/nn/optim.hpp"
#include "qsar/train/metrics.hpp"

namespace qsar::train {

struct TrainResult {
  std::vector<RunRecord> history;
  bool diverged = false;        // non-finite loss encountered; training aborted
  std::string diagnostic;       // where the abort happened
};

using EpochCallback = std::function<void(const RunRecord&)>;

/// Inverse train-split class frequency, normalized so the mean weight is 1.
/// A balanced split yields all-ones (weighted loss == unweighted loss).
std::vector<double> class_weights(const std::vector<data::ComplexChip>& chips,
                                  int n_classes);

/// Trains the bundle in place: per epoch a seeded shuffle, per batch
/// mean-reduced gradient accumulation followed by one Adam step with a
/// per-step cosine learning rate (lr at step 0, eta_min at the final step).
/// A non-finite loss aborts with `diverged` set instead of masking it.
/// `on_epoch` (optional) fires after each epoch's RunRecord is complete.
TrainResult fit(models::ModelBundle& bundle,
                const std::vector<data::ComplexChip>& chips,
                const nn::TrainConfig& config,
                const EpochCallback& on_epoch = nullptr);

}  // namespace qsar::train
