#include "qsar/qsim/program.hpp"

#include <set>
#include <stdexcept>
#include <string>

namespace qsar::qsim {

void CircuitProgram::validate() const {
  if (n_qubits < 1 || n_qubits > 10) {
    throw std::invalid_argument("CircuitProgram: n_qubits must be in 1..10");
  }
  std::set<int> enc, par;
  for (const auto& g : gates) {
    if (g.target < 0 || g.target >= n_qubits) {
      throw std::invalid_argument("CircuitProgram: gate target out of range");
    }
    if (g.kind == GateKind::CNOT) {
      if (g.control < 0 || g.control >= n_qubits) {
        throw std::invalid_argument("CircuitProgram: CNOT control out of range");
      }
      if (g.control == g.target) {
        throw std::invalid_argument("CircuitProgram: CNOT control == target");
      }
    } else {
      if (g.control != -1) {
        throw std::invalid_argument("CircuitProgram: rotation gate has control");
      }
      switch (g.angle.kind) {
        case SlotKind::Fixed:
          break;
        case SlotKind::Encoding:
          if (g.angle.index < 0 || g.angle.index >= n_inputs) {
            throw std::invalid_argument("CircuitProgram: encoding index out of range");
          }
          enc.insert(g.angle.index);
          break;
        case SlotKind::Trainable:
          if (g.angle.index < 0 || g.angle.index >= n_params) {
            throw std::invalid_argument("CircuitProgram: trainable index out of range");
          }
          par.insert(g.angle.index);
          break;
      }
    }
  }
  if (static_cast<int>(enc.size()) != n_inputs) {
    throw std::invalid_argument("CircuitProgram: encoding slots not gap-free");
  }
  if (static_cast<int>(par.size()) != n_params) {
    throw std::invalid_argument("CircuitProgram: trainable slots not gap-free");
  }
  std::set<int> obs(observables.begin(), observables.end());
  if (obs.size() != observables.size()) {
    throw std::invalid_argument("CircuitProgram: duplicate observables");
  }
  for (int q : observables) {
    if (q < 0 || q >= n_qubits) {
      throw std::invalid_argument("CircuitProgram: observable out of range");
    }
  }
}

}  // namespace qsar::qsim
