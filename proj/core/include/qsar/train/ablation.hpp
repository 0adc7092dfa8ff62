#pragma once

#include <vector>

#include "qsar/data/chip.hpp"
#include "qsar/models/bundle.hpp"
#include "qsar/train/metrics.hpp"

namespace qsar::train {

struct AblationReport {
  double accuracy_with_phase = 0.0;
  double accuracy_phase_zeroed = 0.0;
  double delta_points = 0.0;  // (with - zeroed) in percentage points
  std::vector<std::vector<long>> confusion_with;
  std::vector<std::vector<long>> confusion_zeroed;
};

/// Evaluates the Test split twice with identical, frozen weights: once with
/// phase inputs intact and once with them zeroed. Weights are never mutated.
AblationReport ablate_phase(const models::ModelBundle& bundle,
                            const std::vector<data::ComplexChip>& chips);

}  // namespace qsar::train
