#include <stdexcept>

#include "internal.hpp"
#include "qsar/data/preprocess.hpp"
#include "qsar/nn/ops.hpp"
#include "qsar/nn/quantum_layer.hpp"

namespace qsar::models {

namespace detail {

namespace {

// Per-patch encoding angles: top-6 pixels by magnitude (descending, ties by
// index), with the strategy's second channel taken at the same pixels.
// Ablation zeroes the phase (S2) or Q (S3) angles; S1 has no phase input.
std::vector<double> patch_inputs(const ModelBundle& bundle,
                                 const std::vector<double>& mag_angles,
                                 const std::vector<double>& second_angles,
                                 const std::vector<double>& ry_angles,
                                 int patch, bool ablate_phase) {
  const auto patch_ry = data::extract_patch(ry_angles, patch);
  const auto patch_mag = data::extract_patch(mag_angles, patch);
  const auto top = data::topk_indices(patch_mag, 6);

  std::vector<double> inputs;
  inputs.reserve(bundle.patch_program.n_inputs);
  for (int idx : top) inputs.push_back(patch_ry[idx]);
  if (bundle.patch_program.n_inputs == 12) {
    const auto patch_second = data::extract_patch(second_angles, patch);
    for (int idx : top) {
      inputs.push_back(ablate_phase ? 0.0 : patch_second[idx]);
    }
  }
  return inputs;
}

}  // namespace

nn::Tensor magnitude_cls(const ModelBundle& bundle,
                         const data::ComplexChip& chip,
                         const ForwardOptions& opts) {
  const auto roi = data::center_crop(chip);
  const auto mag_angles = data::normalize_magnitude(roi.magnitude);

  // RY channel is the normalized magnitude except for S3, where RY carries I
  // and RZ carries Q; selection is always by magnitude.
  std::vector<double> ry_angles = mag_angles;
  std::vector<double> second_angles;
  if (bundle.strategy == EncodingStrategy::S2_JointComplex) {
    second_angles = data::normalize_phase(roi.phase);
  } else if (bundle.strategy == EncodingStrategy::S3_IQ) {
    auto iq = data::to_iq(roi.magnitude, roi.phase);
    ry_angles = std::move(iq.i_angles);
    second_angles = std::move(iq.q_angles);
  }

  std::vector<nn::Tensor> patch_rows;
  patch_rows.reserve(16);
  for (int p = 0; p < 16; ++p) {
    auto inputs = patch_inputs(bundle, mag_angles, second_angles, ry_angles, p,
                               opts.ablate_phase);
    nn::Tensor in = nn::Tensor::leaf({bundle.patch_program.n_inputs},
                                     std::move(inputs));
    patch_rows.push_back(
        nn::quantum_expectations(bundle.patch_program, in, bundle.patch_theta));
  }
  nn::Tensor expectations = nn::stack_rows(patch_rows);  // [16,6]
  if (opts.trace != nullptr) {
    opts.trace->patch_expectations = expectations.values();
  }

  nn::Tensor emb = bundle.proj.forward(expectations);             // [16,64]
  nn::Tensor tokens = nn::concat_rows(bundle.cls_token, emb);     // [17,64]
  tokens = nn::add(tokens, bundle.pos_embed);

  static std::mt19937_64 unused_rng;  // dropout inactive without a supplied rng
  std::mt19937_64* rng = opts.dropout_rng != nullptr ? opts.dropout_rng : &unused_rng;
  const double p = opts.train_mode ? opts.dropout_p : 0.0;
  if (p > 0.0 && opts.dropout_rng == nullptr) {
    throw std::invalid_argument("forward: dropout requires a dropout_rng");
  }
  tokens = bundle.transformer.forward(tokens, p, opts.train_mode, *rng);

  nn::Tensor cls = nn::row(tokens, 0);
  if (opts.trace != nullptr) opts.trace->mag_summary = cls.values();
  return cls;
}

}  // namespace detail

nn::Tensor forward_hybrid(const ModelBundle& bundle,
                          const data::ComplexChip& chip,
                          const ForwardOptions& opts) {
  if (bundle.kind != ModelKind::Hybrid) {
    throw std::invalid_argument("forward_hybrid: bundle is not a hybrid model");
  }
  nn::Tensor cls = detail::magnitude_cls(bundle, chip, opts);
  return bundle.head.forward(cls);
}

}  // namespace qsar::models
