#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "qsar/qsim/program.hpp"

namespace qsar::train {

struct CheckResult {
  std::string name;   // op or check name
  double max_error = 0.0;
  double tolerance = 0.0;
  bool pass = true;
};

struct GradcheckReport {
  std::vector<CheckResult> checks;
  bool pass = true;
};

/// Random well-formed circuit (1..max_qubits qubits, <= max_gates gates,
/// gap-free slot sets with deliberate slot sharing) for gradient cross-checks.
qsim::CircuitProgram random_program(std::mt19937_64& rng, int max_qubits = 8,
                                    int max_gates = 80);

/// Runs the full gradient verification suite:
///  - adjoint vs parameter-shift vs central finite differences on
///    `n_circuits` random circuits;
///  - finite-difference checks of every autodiff op's backward rule;
///  - end-to-end finite-difference spot checks through all three model
///    architectures (including VQC-to-VQC encoding-input gradients).
/// `fault_op`, when non-empty, flips the sign of the analytic gradient for
/// the named check so fault reporting can be exercised.
GradcheckReport run_gradcheck(std::uint64_t seed, int n_circuits = 100,
                              const std::string& fault_op = "");

/// One line per check: name, max error, tolerance, PASS/FAIL.
std::string gradcheck_report_text(const GradcheckReport& report);

}  // namespace qsar::train
