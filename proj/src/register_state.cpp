// register_state.cpp
#include "corrsense/register_state.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace corrsense::dynamics {

void QubitRegisterState::validate_basic() const {
  if (n_qubits < 1 || n_qubits > max_qubits) {
    throw std::invalid_argument("n_qubits must be in [1, " +
                                std::to_string(max_qubits) + "]");
  }
  const long d = dim();
  if (matrix.rows() != d || matrix.cols() != d) {
    throw std::invalid_argument("density matrix dimension does not match n_qubits");
  }
  if ((matrix - matrix.adjoint()).cwiseAbs().maxCoeff() > 1e-10) {
    throw std::invalid_argument("density matrix must be Hermitian");
  }
  if (std::abs(matrix.trace() - std::complex<double>(1.0, 0.0)) > 1e-10) {
    throw std::invalid_argument("density matrix must have unit trace");
  }
}

QubitRegisterState from_pure(int n_qubits, const Eigen::VectorXcd& amplitudes) {
  if (n_qubits < 1 || n_qubits > QubitRegisterState::max_qubits) {
    throw std::invalid_argument("n_qubits out of range");
  }
  const long d = 1L << n_qubits;
  if (amplitudes.size() != d) {
    throw std::invalid_argument("amplitude vector dimension does not match n_qubits");
  }
  const double norm = amplitudes.norm();
  if (std::abs(norm - 1.0) > 1e-10) {
    throw std::invalid_argument("amplitudes must be normalized");
  }
  QubitRegisterState out;
  out.n_qubits = n_qubits;
  out.matrix = amplitudes * amplitudes.adjoint();
  return out;
}

Eigen::VectorXcd ghz_amplitudes(int n_qubits) {
  const long d = 1L << n_qubits;
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(d);
  const double w = 1.0 / std::sqrt(2.0);
  amps(0) = w;
  amps(d - 1) = w;
  return amps;
}

Eigen::VectorXcd plus_product_amplitudes(int n_qubits) {
  const long d = 1L << n_qubits;
  const double w = std::pow(2.0, -0.5 * n_qubits);
  return Eigen::VectorXcd::Constant(d, std::complex<double>(w, 0.0));
}

QubitRegisterState ghz_state(int n_qubits) {
  return from_pure(n_qubits, ghz_amplitudes(n_qubits));
}

QubitRegisterState plus_product_state(int n_qubits) {
  return from_pure(n_qubits, plus_product_amplitudes(n_qubits));
}

void write_state(std::ostream& os, const QubitRegisterState& state) {
  state.validate_basic();
  os << "corrsense-state " << state.n_qubits << "\n";
  const long d = state.dim();
  char buf[96];
  for (long r = 0; r < d; ++r) {
    for (long c = 0; c < d; ++c) {
      const std::complex<double> v = state.matrix(r, c);
      if (v.real() == 0.0 && v.imag() == 0.0) continue;
      std::snprintf(buf, sizeof(buf), "%ld %ld %.17g %.17g\n", r, c, v.real(), v.imag());
      os << buf;
    }
  }
}

QubitRegisterState read_state(std::istream& is) {
  std::string tag;
  int n = 0;
  if (!(is >> tag >> n) || tag != "corrsense-state") {
    throw std::invalid_argument("not a corrsense state stream");
  }
  if (n < 1 || n > QubitRegisterState::max_qubits) {
    throw std::invalid_argument("state header n_qubits out of range");
  }
  QubitRegisterState out;
  out.n_qubits = n;
  const long d = out.dim();
  out.matrix = Eigen::MatrixXcd::Zero(d, d);
  long r = 0, c = 0;
  double re = 0.0, im = 0.0;
  while (is >> r >> c >> re >> im) {
    if (r < 0 || r >= d || c < 0 || c >= d) {
      throw std::invalid_argument("state entry index out of range");
    }
    out.matrix(r, c) = std::complex<double>(re, im);
  }
  out.validate_basic();
  return out;
}

}  // namespace corrsense::dynamics
