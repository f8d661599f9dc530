// dynamics.cpp
#include "corrsense/dynamics.hpp"

#include <cmath>
#include <stdexcept>

namespace corrsense::dynamics {

namespace {

// Rows are basis states, columns qubits, entries the Z-eigenvalues +-1.
Eigen::MatrixXd z_table(int n_qubits) {
  const long d = 1L << n_qubits;
  Eigen::MatrixXd z(d, n_qubits);
  for (long r = 0; r < d; ++r) {
    for (int j = 0; j < n_qubits; ++j) z(r, j) = z_value(r, j);
  }
  return z;
}

void check_pair(const QubitRegisterState& state, const noise::DephasingMatrix& a) {
  state.validate_basic();
  if (a.n() != state.n_qubits) {
    throw std::invalid_argument("coefficient matrix size does not match register");
  }
}

}  // namespace

Eigen::MatrixXd coherence_exponents(const noise::DephasingMatrix& a, int n_qubits) {
  if (a.n() != n_qubits) {
    throw std::invalid_argument("coefficient matrix size does not match n_qubits");
  }
  const long d = 1L << n_qubits;
  const Eigen::MatrixXd z = z_table(n_qubits);
  const Eigen::MatrixXd u = z * a.entries;  // row r is z(r)^T A
  const Eigen::VectorXd diag = (u.array() * z.array()).rowwise().sum();

  Eigen::MatrixXd q(d, d);
  for (long r = 0; r < d; ++r) {
    q(r, r) = 0.0;
    for (long c = r + 1; c < d; ++c) {
      const double cross = u.row(r).dot(z.row(c));
      const double v = (diag(r) + diag(c) - 2.0 * cross) / 16.0;
      q(r, c) = v;
      q(c, r) = v;
    }
  }
  return q;
}

QubitRegisterState evolve_markovian(const QubitRegisterState& state,
                                    const noise::DephasingMatrix& a, double t) {
  check_pair(state, a);
  if (!(t >= 0.0)) throw std::invalid_argument("t must be >= 0");
  const Eigen::MatrixXd q = coherence_exponents(a, state.n_qubits);
  QubitRegisterState out = state;
  out.matrix = state.matrix.cwiseProduct(
      (-a.gamma * t * q.array()).exp().matrix().cast<std::complex<double>>());
  return out;
}

EvolvedWithDerivative evolve_markovian_with_xi_derivative(
    const QubitRegisterState& state, const noise::DephasingMatrix& a, double xi,
    double t) {
  check_pair(state, a);
  if (!(xi > 0.0)) throw std::invalid_argument("xi must be > 0");
  if (!(t >= 0.0)) throw std::invalid_argument("t must be >= 0");
  const Eigen::MatrixXd q = coherence_exponents(a, state.n_qubits);
  EvolvedWithDerivative out;
  out.rho = state.matrix.cwiseProduct(
      (-a.gamma * t * q.array()).exp().matrix().cast<std::complex<double>>());
  // A is proportional to xi, so d rho / d xi = -(gamma t q / xi) rho entrywise.
  out.drho_dxi = out.rho.cwiseProduct(
      ((-a.gamma * t / xi) * q).cast<std::complex<double>>());
  return out;
}

QubitRegisterState evolve_spatiotemporal(const QubitRegisterState& state,
                                         const noise::DephasingMatrix& a_spatial,
                                         const filter::SpectralModel& spec,
                                         const PulseSequence& pulses, double t_s) {
  check_pair(state, a_spatial);
  spec.validate();
  if (!(t_s >= 0.0)) throw std::invalid_argument("t_s must be >= 0");
  filter::check_exponent_window(pulses, spec.p);

  const double c = filter::coefficient_closed_form(pulses, spec.p).value;
  const double scale = spec.xi * std::pow(t_s, 1.0 + spec.p) * c;
  // exponent per coherence: scale * (Dz)^T A1 (Dz) / 4 = scale * 4 q.
  const Eigen::MatrixXd q = coherence_exponents(a_spatial, state.n_qubits);
  QubitRegisterState out = state;
  out.matrix = state.matrix.cwiseProduct(
      (-4.0 * scale * q.array()).exp().matrix().cast<std::complex<double>>());
  return out;
}

Eigen::MatrixXcd lindblad_rhs(const Eigen::MatrixXcd& rho,
                              const noise::DephasingMatrix& a) {
  const long d = rho.rows();
  if (rho.cols() != d) throw std::invalid_argument("rho must be square");
  long n = 0;
  while ((1L << n) < d) ++n;
  if ((1L << n) != d) throw std::invalid_argument("rho dimension must be a power of 2");
  if (a.n() != n) {
    throw std::invalid_argument("coefficient matrix size does not match rho");
  }

  // Diagonal jump operators h_j with eigenvalues z_j(r) / 2.
  std::vector<Eigen::VectorXcd> h(n);
  for (int j = 0; j < n; ++j) {
    h[j] = Eigen::VectorXcd::NullaryExpr(d, [j](Eigen::Index r) {
      return std::complex<double>(0.5 * z_value(r, j), 0.0);
    });
  }

  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(d, d);
  for (int j = 0; j < n; ++j) {
    for (int l = 0; l < n; ++l) {
      const double w = a.entries(j, l);
      if (w == 0.0) continue;
      // h_l rho h_j - (1/2) {h_j h_l, rho}; all operators are diagonal.
      const Eigen::VectorXcd hjl = h[j].cwiseProduct(h[l]);
      Eigen::MatrixXcd term = h[l].asDiagonal() * rho * h[j].asDiagonal();
      term.noalias() -= 0.5 * (hjl.asDiagonal() * rho);
      term.noalias() -= 0.5 * (rho * hjl.asDiagonal());
      out += w * term;
    }
  }
  return (a.gamma / 2.0) * out;
}

}  // namespace corrsense::dynamics
