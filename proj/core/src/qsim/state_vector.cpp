#include "qsar/qsim/state_vector.hpp"

#include <cmath>
#include <stdexcept>

namespace qsar::qsim {

StateVector::StateVector(int n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits < 1 || n_qubits > 10) {
    throw std::invalid_argument("StateVector: n_qubits must be in 1..10");
  }
  amps_.assign(std::size_t{1} << n_qubits, cdouble{0.0, 0.0});
  amps_[0] = 1.0;
}

void StateVector::reset() {
  std::fill(amps_.begin(), amps_.end(), cdouble{0.0, 0.0});
  amps_[0] = 1.0;
}

void StateVector::check_qubit(int q) const {
  if (q < 0 || q >= n_qubits_) {
    throw std::out_of_range("StateVector: qubit index out of range");
  }
}

void StateVector::apply_1q(int target, cdouble u00, cdouble u01, cdouble u10,
                           cdouble u11) {
  check_qubit(target);
  const std::size_t bit = std::size_t{1} << target;
  const std::size_t n = amps_.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (i & bit) continue;
    const cdouble a0 = amps_[i];
    const cdouble a1 = amps_[i | bit];
    amps_[i] = u00 * a0 + u01 * a1;
    amps_[i | bit] = u10 * a0 + u11 * a1;
  }
}

void StateVector::apply_ry(int target, double angle) {
  const double c = std::cos(angle / 2.0);
  const double s = std::sin(angle / 2.0);
  apply_1q(target, c, -s, s, c);
}

void StateVector::apply_rz(int target, double angle) {
  check_qubit(target);
  const cdouble e0 = std::polar(1.0, -angle / 2.0);
  const cdouble e1 = std::polar(1.0, angle / 2.0);
  const std::size_t bit = std::size_t{1} << target;
  const std::size_t n = amps_.size();
  for (std::size_t i = 0; i < n; ++i) {
    amps_[i] *= (i & bit) ? e1 : e0;
  }
}

void StateVector::apply_cnot(int control, int target) {
  check_qubit(control);
  check_qubit(target);
  if (control == target) {
    throw std::invalid_argument("CNOT: control == target");
  }
  const std::size_t cbit = std::size_t{1} << control;
  const std::size_t tbit = std::size_t{1} << target;
  const std::size_t n = amps_.size();
  for (std::size_t i = 0; i < n; ++i) {
    if ((i & cbit) && !(i & tbit)) {
      std::swap(amps_[i], amps_[i | tbit]);
    }
  }
}

double StateVector::expectation_z(int qubit) const {
  check_qubit(qubit);
  const std::size_t bit = std::size_t{1} << qubit;
  double e = 0.0;
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    const double p = std::norm(amps_[i]);
    e += (i & bit) ? -p : p;
  }
  return e;
}

double StateVector::squared_norm() const {
  double s = 0.0;
  for (const auto& a : amps_) s += std::norm(a);
  return s;
}

}  // namespace qsar::qsim
