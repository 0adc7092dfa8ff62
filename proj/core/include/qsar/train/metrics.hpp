#pragma once

#include <map>
#include <string>
#include <vector>

#include "qsar/data/chip.hpp"
#include "qsar/models/bundle.hpp"

namespace qsar::train {

struct RunRecord {
  int epoch = 0;
  double train_loss = 0.0;
  double train_accuracy = 0.0;
  double test_accuracy = 0.0;
  double lr = 0.0;
  std::map<std::string, double> grad_norms;  // per-component L2
  double wall_time_sec = 0.0;
};

/// One JSON object per record (JSON-lines friendly).
std::string run_record_to_json(const RunRecord& record);

struct EvalResult {
  double accuracy = 0.0;
  std::vector<std::vector<long>> confusion;  // rows = truth
};

/// Accuracy and confusion over the chips of one split. Parallel over
/// samples up to the QSAR_THREADS cap; results are order-independent.
EvalResult evaluate(const models::ModelBundle& bundle,
                    const std::vector<data::ComplexChip>& chips,
                    data::Split split, bool ablate_phase = false);

std::string confusion_to_csv(const std::vector<std::vector<long>>& confusion);

/// L2 norm of the accumulated gradient per component (first path segment of
/// the registry name). Covers every trainable parameter exactly once.
std::map<std::string, double> grad_norms(const nn::ParamRegistry& registry);

/// Worker cap from QSAR_THREADS (>=1); hardware concurrency by default.
int worker_count();

}  // namespace qsar::train
