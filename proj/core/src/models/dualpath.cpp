#include <stdexcept>

#include "internal.hpp"
#include "qsar/data/preprocess.hpp"
#include "qsar/nn/ops.hpp"
#include "qsar/nn/quantum_layer.hpp"

namespace qsar::models {

nn::Tensor forward_dualpath(const ModelBundle& bundle,
                            const data::ComplexChip& chip,
                            const ForwardOptions& opts) {
  if (bundle.kind != ModelKind::DualPath) {
    throw std::invalid_argument("forward_dualpath: bundle is not dual-path");
  }
  nn::Tensor cls = detail::magnitude_cls(bundle, chip, opts);  // 64

  const auto roi = data::center_crop(chip);
  std::vector<double> pooled = data::avg_pool(roi.phase, 64, 64, 8, 8);
  if (opts.ablate_phase) {
    std::fill(pooled.begin(), pooled.end(), 0.0);
  }
  const auto angles = data::normalize_phase(pooled);
  nn::Tensor phase_in = nn::Tensor::leaf({64}, angles);
  nn::Tensor phase_z = nn::quantum_expectations(bundle.phase_program, phase_in,
                                                bundle.phase_theta);  // 8
  if (opts.trace != nullptr) opts.trace->phase_features = phase_z.values();

  nn::Tensor phase_feat = bundle.phase_proj.forward(phase_z);  // 32
  if (opts.trace != nullptr) opts.trace->phase_projected = phase_feat.values();

  nn::Tensor fused = nn::concat_vec({cls, phase_feat});  // 96
  if (opts.trace != nullptr) opts.trace->fused = fused.values();
  return bundle.head.forward(fused);
}

}  // namespace qsar::models
