#pragma once

#include <span>
#include <vector>

#include "qsar/qsim/program.hpp"
#include "qsar/qsim/state_vector.hpp"

namespace qsar::qsim {

/// Execute the program on |0...0> and return <Z_q> for each observable q.
std::vector<double> run(const CircuitProgram& program,
                        std::span<const double> inputs,
                        std::span<const double> params);

/// Expectations plus the exact jacobian d<Z_q>/d(angle slot) computed by the
/// adjoint method in a single reverse sweep. Row layout: one row per
/// observable; columns 0..n_inputs-1 are Encoding slots, the remaining
/// n_params columns are Trainable slots. Gates sharing a slot sum into the
/// same column.
struct AdjointResult {
  std::vector<double> expectations;          // |observables|
  std::vector<std::vector<double>> jacobian; // |observables| x (n_inputs+n_params)
};

AdjointResult adjoint_gradient(const CircuitProgram& program,
                               std::span<const double> inputs,
                               std::span<const double> params);

/// Exact gradient of every observable w.r.t. one angle slot via the shift
/// rule (f(θ+π/2) − f(θ−π/2))/2, summed over all gates sharing the slot.
/// Verification path only; the production gradient path is adjoint_gradient.
std::vector<double> parameter_shift_gradient(const CircuitProgram& program,
                                             std::span<const double> inputs,
                                             std::span<const double> params,
                                             SlotKind slot_kind,
                                             int slot_index);

}  // namespace qsar::qsim
