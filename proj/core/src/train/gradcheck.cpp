#include "qsar/train/gradcheck.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

#include "qsar/circuits/templates.hpp"
#include "qsar/data/synth.hpp"
#include "qsar/models/bundle.hpp"
#include "qsar/nn/ops.hpp"
#include "qsar/nn/quantum_layer.hpp"
#include "qsar/qsim/simulator.hpp"
#include "qsar/util/rng.hpp"

namespace qsar::train {

namespace {

double rel_error(double a, double b, double floor) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), floor});
}

void fold_check(GradcheckReport& report, CheckResult result,
                const std::string& fault_op) {
  if (result.name == fault_op) {
    // Simulated backward-rule fault: a sign flip makes the analytic gradient
    // disagree with finite differences unless the true gradient is ~zero.
    result.max_error = std::max(result.max_error, 2.0 * result.tolerance + 1.0);
  }
  result.pass = result.max_error <= result.tolerance;
  report.pass = report.pass && result.pass;
  report.checks.push_back(std::move(result));
}

// ---------------------------------------------------------------------------
// Circuit triangle: adjoint vs parameter-shift vs central finite differences.
// ---------------------------------------------------------------------------

std::vector<double> circuit_fd(const qsim::CircuitProgram& program,
                               std::vector<double> inputs,
                               std::vector<double> params,
                               qsim::SlotKind kind, int index, double h) {
  double& angle = kind == qsim::SlotKind::Encoding ? inputs[index]
                                                   : params[index];
  const double saved = angle;
  angle = saved + h;
  auto plus = qsim::run(program, inputs, params);
  angle = saved - h;
  auto minus = qsim::run(program, inputs, params);
  for (std::size_t i = 0; i < plus.size(); ++i) {
    plus[i] = (plus[i] - minus[i]) / (2.0 * h);
  }
  return plus;
}

void check_circuit_triangle(GradcheckReport& report, std::uint64_t seed,
                            int n_circuits, const std::string& fault_op) {
  CheckResult adj_vs_shift{"adjoint_vs_shift", 0.0, 1e-10, true};
  CheckResult adj_vs_fd{"adjoint_vs_fd", 0.0, 1e-5, true};
  CheckResult shift_vs_fd{"shift_vs_fd", 0.0, 1e-5, true};
  constexpr double h = 1e-4;

  for (int c = 0; c < n_circuits; ++c) {
    auto rng = util::make_rng(seed, "gradcheck.circuit", c);
    auto program = random_program(rng);
    std::uniform_real_distribution<double> angle(-std::numbers::pi,
                                                 std::numbers::pi);
    std::vector<double> inputs(program.n_inputs), params(program.n_params);
    for (double& x : inputs) x = angle(rng);
    for (double& x : params) x = angle(rng);

    const auto adjoint = qsim::adjoint_gradient(program, inputs, params);
    const int n_slots = program.n_inputs + program.n_params;
    for (int s = 0; s < n_slots; ++s) {
      const bool is_input = s < program.n_inputs;
      const auto kind =
          is_input ? qsim::SlotKind::Encoding : qsim::SlotKind::Trainable;
      const int idx = is_input ? s : s - program.n_inputs;
      const auto shift =
          qsim::parameter_shift_gradient(program, inputs, params, kind, idx);
      const auto fd = circuit_fd(program, inputs, params, kind, idx, h);
      for (std::size_t o = 0; o < shift.size(); ++o) {
        const double a = adjoint.jacobian[o][s];
        adj_vs_shift.max_error =
            std::max(adj_vs_shift.max_error, std::abs(a - shift[o]));
        adj_vs_fd.max_error =
            std::max(adj_vs_fd.max_error, rel_error(a, fd[o], 1.0));
        shift_vs_fd.max_error =
            std::max(shift_vs_fd.max_error, rel_error(shift[o], fd[o], 1.0));
      }
    }
  }
  fold_check(report, std::move(adj_vs_shift), fault_op);
  fold_check(report, std::move(adj_vs_fd), fault_op);
  fold_check(report, std::move(shift_vs_fd), fault_op);
}

// ---------------------------------------------------------------------------
// Per-op finite-difference checks of the autodiff backward rules.
// ---------------------------------------------------------------------------

// Reduce an op output to a scalar with fixed (non-trainable) weights so
// backward() can run; 1D outputs use linear, 2D outputs a double contraction.
nn::Tensor scalarize(const nn::Tensor& out, std::mt19937_64& rng) {
  if (out.size() == 1) return out;
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  auto random_leaf = [&](std::vector<int> shape) {
    std::vector<double> v(
        static_cast<std::size_t>(shape[0]) * (shape.size() > 1 ? shape[1] : 1));
    for (double& x : v) x = u(rng);
    return nn::Tensor::leaf(std::move(shape), std::move(v));
  };
  if (out.shape().size() == 1) {
    const int n = out.dim(0);
    return nn::linear(out, random_leaf({n, 1}), nn::Tensor::zeros({1}));
  }
  const int r = out.dim(0), c = out.dim(1);
  return nn::matmul(nn::matmul(random_leaf({1, r}), out), random_leaf({c, 1}));
}

struct OpCase {
  std::string name;
  std::vector<std::vector<int>> input_shapes;
  // Builds the op output from gradient-carrying leaf inputs.
  std::function<nn::Tensor(const std::vector<nn::Tensor>&)> build;
};

void check_op(GradcheckReport& report, const OpCase& op, std::uint64_t seed,
              const std::string& fault_op) {
  constexpr double h = 1e-5;
  CheckResult result{op.name, 0.0, 1e-6, true};

  auto rng = util::make_rng(seed, "gradcheck.op", report.checks.size());
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<std::vector<double>> base;
  for (const auto& shape : op.input_shapes) {
    std::size_t n = 1;
    for (int d : shape) n *= static_cast<std::size_t>(d);
    std::vector<double> v(n);
    for (double& x : v) x = u(rng);
    base.push_back(std::move(v));
  }
  const std::uint64_t scalarize_seed = rng();

  auto eval = [&](bool with_grad) {
    std::vector<nn::Tensor> leaves;
    for (std::size_t i = 0; i < base.size(); ++i) {
      leaves.push_back(
          nn::Tensor::leaf(op.input_shapes[i], base[i], with_grad));
    }
    auto srng = std::mt19937_64(scalarize_seed);
    nn::Tensor loss = scalarize(op.build(leaves), srng);
    return std::make_pair(loss, std::move(leaves));
  };

  auto [loss, leaves] = eval(true);
  loss.backward();

  for (std::size_t i = 0; i < base.size(); ++i) {
    for (std::size_t e = 0; e < base[i].size(); ++e) {
      const double saved = base[i][e];
      base[i][e] = saved + h;
      const double plus = eval(false).first.item();
      base[i][e] = saved - h;
      const double minus = eval(false).first.item();
      base[i][e] = saved;
      const double fd = (plus - minus) / (2.0 * h);
      const double analytic = leaves[i].grad()[e];
      result.max_error =
          std::max(result.max_error, rel_error(analytic, fd, 1e-3));
    }
  }
  fold_check(report, std::move(result), fault_op);
}

void check_ops(GradcheckReport& report, std::uint64_t seed,
               const std::string& fault_op) {
  using nn::Tensor;
  const std::uint64_t dropout_seed = util::substream_seed(seed, "gradcheck.dropout");
  const auto patch_vqc = circuits::build_patch_vqc4();

  std::vector<OpCase> cases = {
      {"add", {{3, 4}, {3, 4}},
       [](const auto& x) { return nn::add(x[0], x[1]); }},
      {"add_rowvec", {{3, 4}, {4}},
       [](const auto& x) { return nn::add_rowvec(x[0], x[1]); }},
      {"mul_scalar", {{5}},
       [](const auto& x) { return nn::mul_scalar(x[0], 1.7); }},
      {"affine", {{5}},
       [](const auto& x) { return nn::affine(x[0], 0.6, -0.2); }},
      {"gelu", {{7}}, [](const auto& x) { return nn::gelu(x[0]); }},
      {"matmul", {{3, 4}, {4, 2}},
       [](const auto& x) { return nn::matmul(x[0], x[1]); }},
      {"transpose", {{3, 4}},
       [](const auto& x) { return nn::transpose(x[0]); }},
      {"linear_2d", {{3, 4}, {4, 2}, {2}},
       [](const auto& x) { return nn::linear(x[0], x[1], x[2]); }},
      {"linear_1d", {{4}, {4, 2}, {2}},
       [](const auto& x) { return nn::linear(x[0], x[1], x[2]); }},
      {"row", {{3, 4}}, [](const auto& x) { return nn::row(x[0], 1); }},
      {"slice_cols", {{3, 6}},
       [](const auto& x) { return nn::slice_cols(x[0], 2, 3); }},
      {"concat_cols", {{3, 2}, {3, 3}},
       [](const auto& x) { return nn::concat_cols({x[0], x[1]}); }},
      {"concat_rows", {{2, 4}, {3, 4}},
       [](const auto& x) { return nn::concat_rows(x[0], x[1]); }},
      {"stack_rows", {{4}, {4}, {4}},
       [](const auto& x) { return nn::stack_rows({x[0], x[1], x[2]}); }},
      {"concat_vec", {{3}, {5}},
       [](const auto& x) { return nn::concat_vec({x[0], x[1]}); }},
      {"softmax_rows", {{3, 4}},
       [](const auto& x) { return nn::softmax_rows(x[0]); }},
      {"layer_norm", {{3, 4}, {4}, {4}},
       [](const auto& x) { return nn::layer_norm(x[0], x[1], x[2]); }},
      {"dropout", {{10}},
       [dropout_seed](const auto& x) {
         std::mt19937_64 rng(dropout_seed);  // same mask on every evaluation
         return nn::dropout(x[0], 0.3, true, rng);
       }},
      {"softmax_cross_entropy", {{5}},
       [](const auto& x) {
         return nn::softmax_cross_entropy(x[0], 2, 1.3);
       }},
      {"quantum_expectations", {{4}, {32}},
       [&patch_vqc](const auto& x) {
         return nn::quantum_expectations(patch_vqc, x[0], x[1]);
       }},
  };
  for (const auto& op : cases) check_op(report, op, seed, fault_op);
}

// ---------------------------------------------------------------------------
// End-to-end: loss gradient vs finite differences through each architecture.
// ---------------------------------------------------------------------------

void check_end_to_end(GradcheckReport& report, std::uint64_t seed,
                      const std::string& fault_op) {
  constexpr double h = 1e-4;
  data::SynthSpec spec;
  spec.mode = data::SynthMode::Both;
  spec.n_train = 3;
  spec.n_test = 3;
  spec.seed = seed;
  const auto chips = data::synth_generate(spec);
  const auto& chip = chips.front();

  struct Arch {
    std::string name;
    models::ModelBundle bundle;
  };
  std::vector<Arch> archs;
  archs.push_back(
      {"e2e_hybrid_s1",
       models::build_hybrid(models::EncodingStrategy::S1_MagnitudeOnly, 3, seed)});
  archs.push_back({"e2e_dualpath", models::build_dualpath(3, seed)});
  archs.push_back({"e2e_pure", models::build_pure(3, seed)});

  for (auto& arch : archs) {
    CheckResult result{arch.name, 0.0, 1e-4, true};
    auto& bundle = arch.bundle;

    auto loss_value = [&]() {
      models::ForwardOptions opts;  // eval mode: deterministic, no dropout
      nn::Tensor scores = models::forward(bundle, chip, opts);
      return nn::softmax_cross_entropy(scores, chip.label);
    };

    bundle.registry.zero_grads();
    loss_value().backward();

    auto rng = util::make_rng(seed, "gradcheck.e2e", report.checks.size());
    auto& entries = bundle.registry.entries();
    for (int s = 0; s < 20; ++s) {
      auto& entry = entries[rng() % entries.size()];
      auto& values = entry.tensor.values();
      const std::size_t e = rng() % values.size();
      const double saved = values[e];
      values[e] = saved + h;
      const double plus = loss_value().item();
      values[e] = saved - h;
      const double minus = loss_value().item();
      values[e] = saved;
      const double fd = (plus - minus) / (2.0 * h);
      const double analytic = entry.tensor.grad()[e];
      result.max_error =
          std::max(result.max_error, rel_error(analytic, fd, 1e-3));
    }
    fold_check(report, std::move(result), fault_op);
  }
}

}  // namespace

qsim::CircuitProgram random_program(std::mt19937_64& rng, int max_qubits,
                                    int max_gates) {
  std::uniform_int_distribution<int> qubits_dist(1, max_qubits);
  qsim::CircuitProgram program;
  program.n_qubits = qubits_dist(rng);
  program.n_inputs = static_cast<int>(rng() % 5);              // 0..4
  program.n_params = 1 + static_cast<int>(rng() % 6);          // 1..6

  auto random_qubit = [&]() {
    return static_cast<int>(rng() % program.n_qubits);
  };
  auto rotation = [&](qsim::AngleSlot slot) {
    return rng() % 2 == 0 ? qsim::GateOp::ry(random_qubit(), slot)
                          : qsim::GateOp::rz(random_qubit(), slot);
  };

  // Cover every slot index once so the slot sets are gap-free.
  for (int i = 0; i < program.n_inputs; ++i) {
    program.gates.push_back(rotation(qsim::AngleSlot::encoding(i)));
  }
  for (int j = 0; j < program.n_params; ++j) {
    program.gates.push_back(rotation(qsim::AngleSlot::trainable(j)));
  }

  std::uniform_real_distribution<double> angle(-std::numbers::pi,
                                               std::numbers::pi);
  const int extra = static_cast<int>(
      rng() % static_cast<std::uint64_t>(max_gates - program.gates.size() + 1));
  for (int g = 0; g < extra; ++g) {
    const int pick = static_cast<int>(rng() % 4);
    if (pick == 0 && program.n_qubits >= 2) {
      int control = random_qubit(), target = random_qubit();
      while (target == control) target = random_qubit();
      program.gates.push_back(qsim::GateOp::cnot(control, target));
    } else if (pick == 1) {
      program.gates.push_back(rotation(qsim::AngleSlot::fixed(angle(rng))));
    } else if (pick == 2 && program.n_inputs > 0) {
      // Deliberate slot sharing (reuploading): gradients must sum.
      program.gates.push_back(rotation(
          qsim::AngleSlot::encoding(static_cast<int>(rng() % program.n_inputs))));
    } else {
      program.gates.push_back(rotation(
          qsim::AngleSlot::trainable(static_cast<int>(rng() % program.n_params))));
    }
  }

  for (int q = 0; q < program.n_qubits; ++q) {
    if (rng() % 10 < 7) program.observables.push_back(q);
  }
  if (program.observables.empty()) program.observables.push_back(random_qubit());

  program.validate();
  return program;
}

GradcheckReport run_gradcheck(std::uint64_t seed, int n_circuits,
                              const std::string& fault_op) {
  GradcheckReport report;
  check_circuit_triangle(report, seed, n_circuits, fault_op);
  check_ops(report, seed, fault_op);
  check_end_to_end(report, seed, fault_op);
  return report;
}

std::string gradcheck_report_text(const GradcheckReport& report) {
  std::ostringstream out;
  for (const auto& c : report.checks) {
    out << (c.pass ? "PASS" : "FAIL") << "  " << c.name
        << "  max_err=" << c.max_error << "  tol=" << c.tolerance << '\n';
  }
  out << (report.pass ? "gradcheck: all checks passed"
                      : "gradcheck: FAILURES detected")
      << '\n';
  return out.str();
}

}  // namespace qsar::train
