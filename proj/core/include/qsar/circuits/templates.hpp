#pragma once

#include "qsar/qsim/program.hpp"

namespace qsar::circuits {

enum class EncodingStrategy {
  S1_MagnitudeOnly,
  S2_JointComplex,
  S3_IQ,
  S4_DualPath,
  S5_PureQuantum,
};

/// 6-qubit, 2-layer patch encoder for the hybrid model. Each layer: encoding
/// block (RY per qubit; S2/S3 add an RZ carrying the second channel), chain
/// CNOTs 0->1..4->5, then 6 trainable RYs. Encoding slots are reuploaded in
/// both layers. n_params = 12; observables = all 6 qubits.
/// Throws if strategy is not S1/S2/S3.
qsim::CircuitProgram build_patch_encoder(EncodingStrategy strategy);

/// 8-qubit, 8-layer phase VQC for the dual-path model. Layer l encodes
/// features 8l..8l+7 via RY, ring CNOTs, then trainable RY+RZ per qubit.
/// n_inputs = 64, n_params = 128.
qsim::CircuitProgram build_phase_vqc();

/// 4-qubit, 4-layer patch VQC of the pure stack with full data reuploading:
/// every layer re-encodes all 4 pooled features. n_inputs = 4, n_params = 32.
qsim::CircuitProgram build_patch_vqc4();

/// 8-qubit, 4-layer VQC with 8 reuploading sub-layers per layer (pairwise
/// CNOTs inside sub-layers), one trainable RY+RZ block per qubit per layer.
/// Serves as both the global magnitude VQC and the pure-stack phase VQC.
/// n_inputs = 64 (each slot consumed once per layer), n_params = 64.
qsim::CircuitProgram build_reuploading_vqc8(int n_features = 64);

/// Fusion VQC over the 16 concatenated magnitude+phase features; n_class
/// qubits, 4 layers, ring CNOTs per sub-layer, trailing feature slots
/// zero-padded with fixed RY(0). n_params = n_class * 8.
qsim::CircuitProgram build_fusion_vqc(int n_class);

}  // namespace qsar::circuits
