#include "qsar/train/ablation.hpp"

namespace qsar::train {

AblationReport ablate_phase(const models::ModelBundle& bundle,
                            const std::vector<data::ComplexChip>& chips) {
  AblationReport report;
  EvalResult with = evaluate(bundle, chips, data::Split::Test, false);
  EvalResult zeroed = evaluate(bundle, chips, data::Split::Test, true);
  report.accuracy_with_phase = with.accuracy;
  report.accuracy_phase_zeroed = zeroed.accuracy;
  report.delta_points = (with.accuracy - zeroed.accuracy) * 100.0;
  report.confusion_with = std::move(with.confusion);
  report.confusion_zeroed = std::move(zeroed.confusion);
  return report;
}

}  // namespace qsar::train
