// register_state.hpp - dense density matrices for small qubit registers.
#pragma once

#include <Eigen/Dense>
#include <iosfwd>

namespace corrsense::dynamics {

// Density matrix of an N-qubit register in the computational basis.
// Basis index r encodes qubit j's bit as (r >> j) & 1; bit 0 means Z-eigenvalue +1.
struct QubitRegisterState {
  int n_qubits = 0;
  Eigen::MatrixXcd matrix;

  static constexpr int max_qubits = 14;

  long dim() const { return 1L << n_qubits; }

  // Cheap structural checks: dimensions, Hermiticity, unit trace.
  void validate_basic() const;
};

// Z-eigenvalue of qubit j in basis state r.
inline double z_value(long r, int j) { return 1.0 - 2.0 * ((r >> j) & 1L); }

QubitRegisterState from_pure(int n_qubits, const Eigen::VectorXcd& amplitudes);

Eigen::VectorXcd ghz_amplitudes(int n_qubits);
Eigen::VectorXcd plus_product_amplitudes(int n_qubits);

QubitRegisterState ghz_state(int n_qubits);
QubitRegisterState plus_product_state(int n_qubits);

// Text serialization: a header line followed by one "row col re im" line per
// nonzero entry at full precision.  Round-trips bit-exactly.
void write_state(std::ostream& os, const QubitRegisterState& state);
QubitRegisterState read_state(std::istream& is);

}  // namespace corrsense::dynamics
