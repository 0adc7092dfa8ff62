#pragma once

#include <cstdint>
#include <random>
#include <span>

#include "qsar/circuits/templates.hpp"
#include "qsar/data/chip.hpp"
#include "qsar/nn/layers.hpp"
#include "qsar/nn/registry.hpp"

namespace qsar::models {

enum class ModelKind { Hybrid, DualPath, PureQuantum };

using circuits::EncodingStrategy;

/// Per-stage feature snapshots captured during a forward pass, used by the
/// ablation-independence checks and gradient-norm telemetry.
struct ForwardTrace {
  std::vector<double> patch_expectations;  // hybrid/dual: 16x6; pure: 16x4
  std::vector<double> mag_summary;         // hybrid/dual: CLS 64; pure: 8
  std::vector<double> phase_features;      // dual: 8; pure: 8
  std::vector<double> phase_projected;     // dual: 32
  std::vector<double> fused;               // dual: 96; pure: 16
};

/// One of the three architectures with its parameter registry (quantum vs
/// classical partitions) and the circuit programs it owns. Immutable in
/// evaluation; training mutates parameter values through the registry only.
struct ModelBundle {
  ModelKind kind = ModelKind::Hybrid;
  EncodingStrategy strategy = EncodingStrategy::S1_MagnitudeOnly;
  int n_classes = 3;
  nn::ParamRegistry registry;

  // Circuit programs (populated per kind).
  qsim::CircuitProgram patch_program;    // hybrid + dual magnitude path
  qsim::CircuitProgram phase_program;    // dual 8q x 8-layer phase VQC
  qsim::CircuitProgram patch_vqc4;       // pure stack
  qsim::CircuitProgram global_vqc;       // pure stack
  qsim::CircuitProgram pure_phase_vqc;   // pure stack
  qsim::CircuitProgram fusion_vqc;       // pure stack

  // Quantum parameter tensors (also present in the registry).
  nn::Tensor patch_theta, phase_theta;
  nn::Tensor patch4_theta, global_theta, pure_phase_theta, fusion_theta;

  // Classical pieces (hybrid / dual).
  nn::Linear proj;        // 6 -> 64
  nn::Tensor cls_token;   // [1,64]
  nn::Tensor pos_embed;   // [17,64]
  nn::TransformerBlock transformer;
  nn::Linear phase_proj;  // dual: 8 -> 32
  nn::MlpHead head;
};

ModelBundle build_hybrid(EncodingStrategy strategy, int n_classes,
                         std::uint64_t seed);
ModelBundle build_dualpath(int n_classes, std::uint64_t seed);
ModelBundle build_pure(int n_classes, std::uint64_t seed);

struct ForwardOptions {
  bool train_mode = false;
  bool ablate_phase = false;
  double dropout_p = 0.0;
  std::mt19937_64* dropout_rng = nullptr;  // required when dropout is active
  ForwardTrace* trace = nullptr;
};

/// Logits (hybrid/dual) or Z-expectation class scores in [-1,1] (pure).
nn::Tensor forward(const ModelBundle& bundle, const data::ComplexChip& chip,
                   const ForwardOptions& opts);

nn::Tensor forward_hybrid(const ModelBundle& bundle,
                          const data::ComplexChip& chip,
                          const ForwardOptions& opts);
nn::Tensor forward_dualpath(const ModelBundle& bundle,
                            const data::ComplexChip& chip,
                            const ForwardOptions& opts);
nn::Tensor forward_pure(const ModelBundle& bundle,
                        const data::ComplexChip& chip,
                        const ForwardOptions& opts);

/// Exact (quantum, classical) parameter totals from the registry.
nn::ParamCounts census(const ModelBundle& bundle);

/// Argmax with ties broken by lowest index.
int predict(std::span<const double> scores);

}  // namespace qsar::models
