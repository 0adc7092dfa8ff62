#include <numbers>
#include <stdexcept>

#include "internal.hpp"
#include "qsar/data/preprocess.hpp"
#include "qsar/nn/ops.hpp"
#include "qsar/nn/quantum_layer.hpp"

namespace qsar::models {

namespace {
// Expectations in [-1,1] -> encoding angles in [0,pi].
nn::Tensor rescale_to_angles(const nn::Tensor& z) {
  constexpr double half_pi = std::numbers::pi / 2.0;
  return nn::affine(z, half_pi, half_pi);
}
}  // namespace

nn::Tensor forward_pure(const ModelBundle& bundle,
                        const data::ComplexChip& chip,
                        const ForwardOptions& opts) {
  if (bundle.kind != ModelKind::PureQuantum) {
    throw std::invalid_argument("forward_pure: bundle is not pure-quantum");
  }
  const auto roi = data::center_crop(chip);
  const auto mag_angles = data::normalize_magnitude(roi.magnitude);

  // Patch VQC, weight-shared across the 16 patches.
  std::vector<nn::Tensor> patch_feats;
  patch_feats.reserve(16);
  for (int p = 0; p < 16; ++p) {
    const auto patch = data::extract_patch(mag_angles, p);
    const auto pooled = data::avg_pool(patch, 16, 16, 2, 2);
    nn::Tensor in = nn::Tensor::leaf({4}, pooled);
    patch_feats.push_back(
        nn::quantum_expectations(bundle.patch_vqc4, in, bundle.patch4_theta));
  }
  nn::Tensor patch_z = nn::concat_vec(patch_feats);  // 64
  if (opts.trace != nullptr) opts.trace->patch_expectations = patch_z.values();

  nn::Tensor z_mag = nn::quantum_expectations(
      bundle.global_vqc, rescale_to_angles(patch_z), bundle.global_theta);  // 8
  if (opts.trace != nullptr) opts.trace->mag_summary = z_mag.values();

  // Phase path; ablation feeds [z_mag, 0] to the fusion VQC (zeroed before
  // the rescale, so the ablated angles are pi/2).
  nn::Tensor z_phase;
  if (opts.ablate_phase) {
    z_phase = nn::Tensor::zeros({8});
  } else {
    const auto pooled = data::avg_pool(roi.phase, 64, 64, 8, 8);
    nn::Tensor phase_in = nn::Tensor::leaf({64}, data::normalize_phase(pooled));
    z_phase = nn::quantum_expectations(bundle.pure_phase_vqc, phase_in,
                                       bundle.pure_phase_theta);
  }
  if (opts.trace != nullptr) opts.trace->phase_features = z_phase.values();

  nn::Tensor fused = nn::concat_vec({z_mag, z_phase});  // 16
  if (opts.trace != nullptr) opts.trace->fused = fused.values();

  return nn::quantum_expectations(bundle.fusion_vqc, rescale_to_angles(fused),
                                  bundle.fusion_theta);
}

}  // namespace qsar::models
