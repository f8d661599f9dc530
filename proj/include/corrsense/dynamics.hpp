// dynamics.hpp - exact dephasing evolution of qubit registers under correlated noise.
#pragma once

#include <Eigen/Dense>

#include "corrsense/noise_model.hpp"
#include "corrsense/pulse_filter.hpp"
#include "corrsense/pulse_sequence.hpp"
#include "corrsense/register_state.hpp"

namespace corrsense::dynamics {

// Pairwise decay exponents q(r, c) = (Dz)^T A (Dz) / 16 with Dz = z(r) - z(c):
// the coherence (r, c) decays as exp(-gamma t q).  Diagonal entries are zero.
// Computed via q = (d_r + d_c - 2 z_r . u_c) / 16 with u = A z, d = z . u.
Eigen::MatrixXd coherence_exponents(const noise::DephasingMatrix& a, int n_qubits);

// Closed-form semigroup evolution: entrywise exponential damping of coherences.
QubitRegisterState evolve_markovian(const QubitRegisterState& state,
                                    const noise::DephasingMatrix& a, double t);

// Evolved state together with its exact derivative with respect to the overall
// noise strength xi, for a family A(xi') = (xi'/xi) A.
struct EvolvedWithDerivative {
  Eigen::MatrixXcd rho;
  Eigen::MatrixXcd drho_dxi;
};
EvolvedWithDerivative evolve_markovian_with_xi_derivative(
    const QubitRegisterState& state, const noise::DephasingMatrix& a, double xi,
    double t);

// One shot of length t_s under a pi-pulse train and a power-law spectrum whose
// spatial profile is the unit-strength matrix a_spatial (strength sits in
// spec.xi).  Coherences damp as exp(-xi t_s^(1+p) C (Dz)^T A1 (Dz) / 4).
QubitRegisterState evolve_spatiotemporal(const QubitRegisterState& state,
                                         const noise::DephasingMatrix& a_spatial,
                                         const filter::SpectralModel& spec,
                                         const PulseSequence& pulses, double t_s);

// Literal dephasing generator, written as the operator double sum so it stays
// an independent route from the closed form above.
Eigen::MatrixXcd lindblad_rhs(const Eigen::MatrixXcd& rho,
                              const noise::DephasingMatrix& a);

}  // namespace corrsense::dynamics
