#include "qsar/nn/quantum_layer.hpp"

#include <stdexcept>

#include "qsar/qsim/simulator.hpp"

namespace qsar::nn {

Tensor quantum_expectations(const qsim::CircuitProgram& program,
                            const Tensor& inputs, const Tensor& params) {
  if (inputs.shape().size() != 1 || params.shape().size() != 1) {
    throw std::invalid_argument("quantum_expectations: expects 1D tensors");
  }
  const int n_obs = static_cast<int>(program.observables.size());
  const bool needs_grad = inputs.requires_grad() || params.requires_grad();

  if (!needs_grad) {
    auto exp = qsim::run(program, inputs.values(), params.values());
    return detail::make_op({n_obs}, std::move(exp), {}, {});
  }

  auto res = qsim::adjoint_gradient(program, inputs.values(), params.values());
  const int n_in = program.n_inputs;
  const int n_par = program.n_params;
  return detail::make_op(
      {n_obs}, std::move(res.expectations), {inputs, params},
      [inputs, params, jac = std::move(res.jacobian), n_obs, n_in,
       n_par](detail::Node& self) mutable {
        for (int k = 0; k < n_obs; ++k) {
          const double g = self.grad[k];
          if (g == 0.0) continue;
          if (inputs.requires_grad()) {
            for (int i = 0; i < n_in; ++i) inputs.grad()[i] += g * jac[k][i];
          }
          if (params.requires_grad()) {
            for (int j = 0; j < n_par; ++j) {
              params.grad()[j] += g * jac[k][n_in + j];
            }
          }
        }
      });
}

}  // namespace qsar::nn
