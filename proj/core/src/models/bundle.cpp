#include "qsar/models/bundle.hpp"

#include <stdexcept>

#include "internal.hpp"
#include "qsar/util/rng.hpp"

namespace qsar::models {

namespace detail {

nn::Tensor init_quantum_angles(int n, std::mt19937_64& rng) {
  // Small init keeps <Z> away from the flat +/-1 regions at the start.
  std::uniform_real_distribution<double> dist(-0.1, 0.1);
  std::vector<double> v(n);
  for (auto& x : v) x = dist(rng);
  return nn::Tensor::leaf({n}, std::move(v), true);
}

}  // namespace detail

namespace {

constexpr int kEmbed = 64;
constexpr int kHeads = 4;

void build_magnitude_path(ModelBundle& b, EncodingStrategy patch_strategy,
                          std::mt19937_64& rng) {
  b.patch_program = circuits::build_patch_encoder(patch_strategy);
  b.patch_theta = b.registry.add(
      "patch_encoder/theta",
      detail::init_quantum_angles(b.patch_program.n_params, rng),
      nn::Partition::Quantum);
  b.proj = nn::Linear::create(b.registry, "proj", 6, kEmbed, rng);
  b.cls_token = b.registry.add("embed/cls",
                               nn::init_normal({1, kEmbed}, 0.02, rng),
                               nn::Partition::Classical);
  b.pos_embed = b.registry.add("embed/pos",
                               nn::init_normal({17, kEmbed}, 0.02, rng),
                               nn::Partition::Classical);
  b.transformer =
      nn::TransformerBlock::create(b.registry, "transformer", kEmbed, kHeads, rng);
}

}  // namespace

ModelBundle build_hybrid(EncodingStrategy strategy, int n_classes,
                         std::uint64_t seed) {
  if (strategy != EncodingStrategy::S1_MagnitudeOnly &&
      strategy != EncodingStrategy::S2_JointComplex &&
      strategy != EncodingStrategy::S3_IQ) {
    throw std::invalid_argument("build_hybrid: strategy must be S1/S2/S3");
  }
  ModelBundle b;
  b.kind = ModelKind::Hybrid;
  b.strategy = strategy;
  b.n_classes = n_classes;
  auto rng = util::make_rng(seed, "init");
  build_magnitude_path(b, strategy, rng);
  b.head = nn::MlpHead::create(b.registry, "head", kEmbed, kEmbed, n_classes, rng);
  return b;
}

ModelBundle build_dualpath(int n_classes, std::uint64_t seed) {
  ModelBundle b;
  b.kind = ModelKind::DualPath;
  b.strategy = EncodingStrategy::S4_DualPath;
  b.n_classes = n_classes;
  auto rng = util::make_rng(seed, "init");
  build_magnitude_path(b, EncodingStrategy::S1_MagnitudeOnly, rng);
  b.phase_program = circuits::build_phase_vqc();
  b.phase_theta = b.registry.add(
      "phase_vqc/theta",
      detail::init_quantum_angles(b.phase_program.n_params, rng),
      nn::Partition::Quantum);
  b.phase_proj = nn::Linear::create(b.registry, "phase_proj", 8, 32, rng);
  b.head = nn::MlpHead::create(b.registry, "head", kEmbed + 32, kEmbed,
                               n_classes, rng);
  return b;
}

ModelBundle build_pure(int n_classes, std::uint64_t seed) {
  ModelBundle b;
  b.kind = ModelKind::PureQuantum;
  b.strategy = EncodingStrategy::S5_PureQuantum;
  b.n_classes = n_classes;
  auto rng = util::make_rng(seed, "init");
  b.patch_vqc4 = circuits::build_patch_vqc4();
  b.global_vqc = circuits::build_reuploading_vqc8();
  b.pure_phase_vqc = circuits::build_reuploading_vqc8();
  b.fusion_vqc = circuits::build_fusion_vqc(n_classes);
  b.patch4_theta = b.registry.add(
      "patch_vqc/theta", detail::init_quantum_angles(b.patch_vqc4.n_params, rng),
      nn::Partition::Quantum);
  b.global_theta = b.registry.add(
      "global_vqc/theta",
      detail::init_quantum_angles(b.global_vqc.n_params, rng),
      nn::Partition::Quantum);
  b.pure_phase_theta = b.registry.add(
      "phase_vqc/theta",
      detail::init_quantum_angles(b.pure_phase_vqc.n_params, rng),
      nn::Partition::Quantum);
  b.fusion_theta = b.registry.add(
      "fusion_vqc/theta",
      detail::init_quantum_angles(b.fusion_vqc.n_params, rng),
      nn::Partition::Quantum);
  return b;
}

nn::Tensor forward(const ModelBundle& bundle, const data::ComplexChip& chip,
                   const ForwardOptions& opts) {
  switch (bundle.kind) {
    case ModelKind::Hybrid:
      return forward_hybrid(bundle, chip, opts);
    case ModelKind::DualPath:
      return forward_dualpath(bundle, chip, opts);
    case ModelKind::PureQuantum:
      return forward_pure(bundle, chip, opts);
  }
  throw std::logic_error("forward: unknown model kind");
}

nn::ParamCounts census(const ModelBundle& bundle) {
  return bundle.registry.counts();
}

int predict(std::span<const double> scores) {
  if (scores.empty()) throw std::invalid_argument("predict: empty scores");
  int best = 0;
  for (int i = 1; i < static_cast<int>(scores.size()); ++i) {
    if (scores[i] > scores[best]) best = i;
  }
  return best;
}

}  // namespace qsar::models
