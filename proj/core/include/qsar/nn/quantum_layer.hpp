#pragma once

#include "qsar/nn/tensor.hpp"
#include "qsar/qsim/program.hpp"

namespace qsar::nn {

/// Differentiable circuit execution: forward runs the state-vector
/// simulation, backward propagates through the adjoint jacobian into BOTH
/// the encoding inputs and the trainable params. Input gradients enable
/// VQC-to-VQC chaining in the pure stack. The program must outlive the
/// autodiff graph.
Tensor quantum_expectations(const qsim::CircuitProgram& program,
                            const Tensor& inputs, const Tensor& params);

}  // namespace qsar::nn
