#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace qsar::qsim {

using cdouble = std::complex<double>;

/// Dense state vector over up to 10 qubits, little-endian: qubit 0 is the
/// least significant bit of the amplitude index.
class StateVector {
 public:
  explicit StateVector(int n_qubits);

  int n_qubits() const { return n_qubits_; }
  std::size_t dim() const { return amps_.size(); }
  const std::vector<cdouble>& amplitudes() const { return amps_; }
  std::vector<cdouble>& amplitudes() { return amps_; }

  /// Reset to |0...0>.
  void reset();

  void apply_ry(int target, double angle);
  void apply_rz(int target, double angle);
  void apply_cnot(int control, int target);

  /// Apply an arbitrary single-qubit matrix [[u00,u01],[u10,u11]].
  void apply_1q(int target, cdouble u00, cdouble u01, cdouble u10, cdouble u11);

  /// <Z_q> of the current state.
  double expectation_z(int qubit) const;

  double squared_norm() const;

 private:
  void check_qubit(int q) const;

  int n_qubits_;
  std::vector<cdouble> amps_;
};

}  // namespace qsar::qsim
