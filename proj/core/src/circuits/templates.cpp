#include "qsar/circuits/templates.hpp"

#include <stdexcept>

namespace qsar::circuits {

using qsim::AngleSlot;
using qsim::CircuitProgram;
using qsim::GateOp;

namespace {

void chain_cnots(CircuitProgram& p, int n) {
  for (int i = 0; i + 1 < n; ++i) p.gates.push_back(GateOp::cnot(i, i + 1));
}

void ring_cnots(CircuitProgram& p, int n) {
  for (int i = 0; i + 1 < n; ++i) p.gates.push_back(GateOp::cnot(i, i + 1));
  if (n > 2) p.gates.push_back(GateOp::cnot(n - 1, 0));
}

void pair_cnots(CircuitProgram& p, int n) {
  for (int i = 0; i + 1 < n; i += 2) p.gates.push_back(GateOp::cnot(i, i + 1));
}

void all_qubit_observables(CircuitProgram& p) {
  for (int q = 0; q < p.n_qubits; ++q) p.observables.push_back(q);
}

}  // namespace

CircuitProgram build_patch_encoder(EncodingStrategy strategy) {
  const bool two_channel = strategy == EncodingStrategy::S2_JointComplex ||
                           strategy == EncodingStrategy::S3_IQ;
  if (!two_channel && strategy != EncodingStrategy::S1_MagnitudeOnly) {
    throw std::invalid_argument("build_patch_encoder: strategy must be S1/S2/S3");
  }
  const int n = 6, layers = 2;
  CircuitProgram p;
  p.n_qubits = n;
  p.n_inputs = two_channel ? 2 * n : n;
  p.n_params = n * layers;
  for (int l = 0; l < layers; ++l) {
    for (int i = 0; i < n; ++i) {
      p.gates.push_back(GateOp::ry(i, AngleSlot::encoding(i)));
      if (two_channel) {
        p.gates.push_back(GateOp::rz(i, AngleSlot::encoding(n + i)));
      }
    }
    chain_cnots(p, n);
    for (int i = 0; i < n; ++i) {
      p.gates.push_back(GateOp::ry(i, AngleSlot::trainable(l * n + i)));
    }
  }
  all_qubit_observables(p);
  p.validate();
  return p;
}

CircuitProgram build_phase_vqc() {
  const int n = 8, layers = 8;
  CircuitProgram p;
  p.n_qubits = n;
  p.n_inputs = n * layers;
  p.n_params = n * layers * 2;
  for (int l = 0; l < layers; ++l) {
    for (int i = 0; i < n; ++i) {
      p.gates.push_back(GateOp::ry(i, AngleSlot::encoding(l * n + i)));
    }
    ring_cnots(p, n);
    for (int i = 0; i < n; ++i) {
      p.gates.push_back(GateOp::ry(i, AngleSlot::trainable(l * 2 * n + i)));
    }
    for (int i = 0; i < n; ++i) {
      p.gates.push_back(GateOp::rz(i, AngleSlot::trainable(l * 2 * n + n + i)));
    }
  }
  all_qubit_observables(p);
  p.validate();
  return p;
}

CircuitProgram build_patch_vqc4() {
  const int n = 4, layers = 4;
  CircuitProgram p;
  p.n_qubits = n;
  p.n_inputs = n;  // shared across layers: full reuploading
  p.n_params = n * layers * 2;
  for (int l = 0; l < layers; ++l) {
    for (int i = 0; i < n; ++i) {
      p.gates.push_back(GateOp::ry(i, AngleSlot::encoding(i)));
    }
    ring_cnots(p, n);
    for (int i = 0; i < n; ++i) {
      p.gates.push_back(GateOp::ry(i, AngleSlot::trainable(l * 2 * n + i)));
    }
    for (int i = 0; i < n; ++i) {
      p.gates.push_back(GateOp::rz(i, AngleSlot::trainable(l * 2 * n + n + i)));
    }
  }
  all_qubit_observables(p);
  p.validate();
  return p;
}

CircuitProgram build_reuploading_vqc8(int n_features) {
  const int n = 8, layers = 4;
  if (n_features != n * n) {
    throw std::invalid_argument("build_reuploading_vqc8: expects 64 features");
  }
  CircuitProgram p;
  p.n_qubits = n;
  p.n_inputs = n_features;
  p.n_params = n * layers * 2;
  for (int l = 0; l < layers; ++l) {
    for (int s = 0; s < n; ++s) {  // 8 sub-layers cover all 64 features
      for (int i = 0; i < n; ++i) {
        p.gates.push_back(GateOp::ry(i, AngleSlot::encoding(s * n + i)));
      }
      pair_cnots(p, n);
    }
    for (int i = 0; i < n; ++i) {
      p.gates.push_back(GateOp::ry(i, AngleSlot::trainable(l * 2 * n + i)));
    }
    for (int i = 0; i < n; ++i) {
      p.gates.push_back(GateOp::rz(i, AngleSlot::trainable(l * 2 * n + n + i)));
    }
  }
  all_qubit_observables(p);
  p.validate();
  return p;
}

CircuitProgram build_fusion_vqc(int n_class) {
  if (n_class < 3) {
    throw std::invalid_argument("build_fusion_vqc: n_class must be >= 3");
  }
  const int layers = 4, n_features = 16;
  const int sublayers = (n_features + n_class - 1) / n_class;
  CircuitProgram p;
  p.n_qubits = n_class;
  p.n_inputs = n_features;
  p.n_params = n_class * layers * 2;
  for (int l = 0; l < layers; ++l) {
    for (int s = 0; s < sublayers; ++s) {
      for (int i = 0; i < n_class; ++i) {
        const int feature = s * n_class + i;
        p.gates.push_back(GateOp::ry(
            i, feature < n_features ? AngleSlot::encoding(feature)
                                    : AngleSlot::fixed(0.0)));
      }
      ring_cnots(p, n_class);
    }
    for (int i = 0; i < n_class; ++i) {
      p.gates.push_back(GateOp::ry(i, AngleSlot::trainable(l * 2 * n_class + i)));
    }
    for (int i = 0; i < n_class; ++i) {
      p.gates.push_back(
          GateOp::rz(i, AngleSlot::trainable(l * 2 * n_class + n_class + i)));
    }
  }
  all_qubit_observables(p);
  p.validate();
  return p;
}

}  // namespace qsar::circuits
