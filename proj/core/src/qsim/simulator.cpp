#include "qsar/qsim/simulator.hpp"

#include <cmath>
#include <stdexcept>

namespace qsar::qsim {

namespace {

double resolve_angle(const AngleSlot& slot, std::span<const double> inputs,
                     std::span<const double> params) {
  switch (slot.kind) {
    case SlotKind::Fixed:
      return slot.fixed_value;
    case SlotKind::Encoding:
      return inputs[slot.index];
    case SlotKind::Trainable:
      return params[slot.index];
  }
  return 0.0;
}

void check_lengths(const CircuitProgram& program,
                   std::span<const double> inputs,
                   std::span<const double> params) {
  if (static_cast<int>(inputs.size()) != program.n_inputs) {
    throw std::invalid_argument("run: inputs length != n_inputs");
  }
  if (static_cast<int>(params.size()) != program.n_params) {
    throw std::invalid_argument("run: params length != n_params");
  }
}

void apply_resolved(StateVector& state, const GateOp& g, double angle) {
  switch (g.kind) {
    case GateKind::RY:
      state.apply_ry(g.target, angle);
      break;
    case GateKind::RZ:
      state.apply_rz(g.target, angle);
      break;
    case GateKind::CNOT:
      state.apply_cnot(g.control, g.target);
      break;
  }
}

void apply_inverse(StateVector& state, const GateOp& g, double angle) {
  switch (g.kind) {
    case GateKind::RY:
      state.apply_ry(g.target, -angle);
      break;
    case GateKind::RZ:
      state.apply_rz(g.target, -angle);
      break;
    case GateKind::CNOT:
      state.apply_cnot(g.control, g.target);
      break;
  }
}

// Multiply by (-i/2) * generator, i.e. the factor turning U into dU/dθ
// after U itself has been applied. RY: (-i/2)Y = [[0,-1/2],[1/2,0]];
// RZ: (-i/2)Z = diag(-i/2, i/2).
void apply_half_generator(StateVector& state, const GateOp& g) {
  if (g.kind == GateKind::RY) {
    state.apply_1q(g.target, 0.0, -0.5, 0.5, 0.0);
  } else {
    state.apply_1q(g.target, cdouble{0.0, -0.5}, 0.0, 0.0, cdouble{0.0, 0.5});
  }
}

// Apply Z on one qubit to a raw amplitude vector.
void apply_z(std::vector<cdouble>& amps, int qubit) {
  const std::size_t bit = std::size_t{1} << qubit;
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if (i & bit) amps[i] = -amps[i];
  }
}

cdouble inner(const std::vector<cdouble>& a, const std::vector<cdouble>& b) {
  cdouble s{0.0, 0.0};
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

// -1 for gates without a differentiable slot, otherwise the jacobian column.
int slot_column(const CircuitProgram& program, const GateOp& g) {
  if (g.kind == GateKind::CNOT || g.angle.kind == SlotKind::Fixed) return -1;
  return g.angle.kind == SlotKind::Encoding ? g.angle.index
                                            : program.n_inputs + g.angle.index;
}

}  // namespace

std::vector<double> run(const CircuitProgram& program,
                        std::span<const double> inputs,
                        std::span<const double> params) {
  check_lengths(program, inputs, params);
  StateVector state(program.n_qubits);
  for (const auto& g : program.gates) {
    apply_resolved(state, g, resolve_angle(g.angle, inputs, params));
  }
  std::vector<double> out;
  out.reserve(program.observables.size());
  for (int q : program.observables) out.push_back(state.expectation_z(q));
  return out;
}

AdjointResult adjoint_gradient(const CircuitProgram& program,
                               std::span<const double> inputs,
                               std::span<const double> params) {
  check_lengths(program, inputs, params);
  const int n_obs = static_cast<int>(program.observables.size());
  const int n_cols = program.n_inputs + program.n_params;

  std::vector<double> angles(program.gates.size());
  StateVector phi(program.n_qubits);
  for (std::size_t j = 0; j < program.gates.size(); ++j) {
    angles[j] = resolve_angle(program.gates[j].angle, inputs, params);
    apply_resolved(phi, program.gates[j], angles[j]);
  }

  AdjointResult result;
  result.expectations.reserve(n_obs);
  for (int q : program.observables) {
    result.expectations.push_back(phi.expectation_z(q));
  }
  result.jacobian.assign(n_obs, std::vector<double>(n_cols, 0.0));

  // One lambda per observable: Z_q |psi_final>, then pulled back through the
  // circuit in step with phi.
  std::vector<StateVector> lambdas(n_obs, StateVector(program.n_qubits));
  for (int k = 0; k < n_obs; ++k) {
    lambdas[k].amplitudes() = phi.amplitudes();
    apply_z(lambdas[k].amplitudes(), program.observables[k]);
  }

  StateVector mu(program.n_qubits);
  for (int j = static_cast<int>(program.gates.size()) - 1; j >= 0; --j) {
    const GateOp& g = program.gates[j];
    apply_inverse(phi, g, angles[j]);  // phi = state before gate j
    const int col = slot_column(program, g);
    if (col >= 0) {
      mu.amplitudes() = phi.amplitudes();
      apply_resolved(mu, g, angles[j]);
      apply_half_generator(mu, g);
      for (int k = 0; k < n_obs; ++k) {
        result.jacobian[k][col] +=
            2.0 * inner(lambdas[k].amplitudes(), mu.amplitudes()).real();
      }
    }
    for (int k = 0; k < n_obs; ++k) {
      apply_inverse(lambdas[k], g, angles[j]);
    }
  }
  return result;
}

std::vector<double> parameter_shift_gradient(const CircuitProgram& program,
                                             std::span<const double> inputs,
                                             std::span<const double> params,
                                             SlotKind slot_kind,
                                             int slot_index) {
  check_lengths(program, inputs, params);
  if (slot_kind == SlotKind::Fixed) {
    throw std::invalid_argument("parameter_shift_gradient: Fixed slots have no gradient");
  }
  const int limit =
      slot_kind == SlotKind::Encoding ? program.n_inputs : program.n_params;
  if (slot_index < 0 || slot_index >= limit) {
    throw std::out_of_range("parameter_shift_gradient: slot out of range");
  }

  auto run_shifted = [&](std::size_t gate_idx, double delta) {
    StateVector state(program.n_qubits);
    for (std::size_t j = 0; j < program.gates.size(); ++j) {
      double angle = resolve_angle(program.gates[j].angle, inputs, params);
      if (j == gate_idx) angle += delta;
      apply_resolved(state, program.gates[j], angle);
    }
    std::vector<double> out;
    out.reserve(program.observables.size());
    for (int q : program.observables) out.push_back(state.expectation_z(q));
    return out;
  };

  const double half_pi = std::acos(0.0);
  std::vector<double> grad(program.observables.size(), 0.0);
  for (std::size_t j = 0; j < program.gates.size(); ++j) {
    const GateOp& g = program.gates[j];
    if (g.kind == GateKind::CNOT) continue;
    if (g.angle.kind != slot_kind || g.angle.index != slot_index) continue;
    const auto plus = run_shifted(j, half_pi);
    const auto minus = run_shifted(j, -half_pi);
    for (std::size_t k = 0; k < grad.size(); ++k) {
      grad[k] += (plus[k] - minus[k]) / 2.0;
    }
  }
  return grad;
}

}  // namespace qsar::qsim
