#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace qsar::qsim {

enum class GateKind : std::uint8_t { RY, RZ, CNOT };

enum class SlotKind : std::uint8_t { Fixed, Encoding, Trainable };

/// Where a rotation gate gets its angle from. Encoding/Trainable slots index
/// into the per-run input and parameter vectors; slots may be shared by
/// several gates (data reuploading), in which case gradients sum over
/// occurrences.
struct AngleSlot {
  SlotKind kind = SlotKind::Fixed;
  double fixed_value = 0.0;  // Fixed only
  int index = -1;            // Encoding/Trainable only

  static AngleSlot fixed(double value) { return {SlotKind::Fixed, value, -1}; }
  static AngleSlot encoding(int i) { return {SlotKind::Encoding, 0.0, i}; }
  static AngleSlot trainable(int i) { return {SlotKind::Trainable, 0.0, i}; }
};

struct GateOp {
  GateKind kind;
  int target = 0;
  int control = -1;  // CNOT only
  AngleSlot angle;   // RY/RZ only

  static GateOp ry(int target, AngleSlot slot) {
    return {GateKind::RY, target, -1, slot};
  }
  static GateOp rz(int target, AngleSlot slot) {
    return {GateKind::RZ, target, -1, slot};
  }
  static GateOp cnot(int control, int target) {
    return {GateKind::CNOT, target, control, AngleSlot{}};
  }
};

/// Immutable gate list with tagged angle slots and Z-observable targets.
/// Validate with validate(); safe to share across threads once built.
struct CircuitProgram {
  int n_qubits = 0;
  std::vector<GateOp> gates;
  std::vector<int> observables;
  int n_inputs = 0;
  int n_params = 0;

  /// Throws std::invalid_argument if any structural invariant is violated:
  /// qubit indices in range, CNOT control/target distinct, gap-free
  /// Encoding/Trainable index sets matching n_inputs/n_params, distinct
  /// observables.
  void validate() const;
};

}  // namespace qsar::qsim
