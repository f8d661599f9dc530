// mc.hpp - stochastic-process and integrator oracles used to verify the closed
// forms: white and colored noise trajectory sampling, RK4 Lindblad integration,
// and the fidelity-based QFI estimator.
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <vector>

#include "corrsense/noise_model.hpp"
#include "corrsense/pulse_filter.hpp"
#include "corrsense/pulse_sequence.hpp"
#include "corrsense/qfi.hpp"
#include "corrsense/register_state.hpp"

namespace corrsense::mc {

struct CoherencePair {
  long row = 0;
  long col = 0;
};

struct CoherenceEstimate {
  long row = 0;
  long col = 0;
  std::complex<double> mean;
  double stderr_re = 0.0;
  double stderr_im = 0.0;
};

// Ensemble averages over trajectories.  Bit-identical for a given seed
// regardless of the worker-thread count: every trajectory owns an RNG
// substream and the reduction follows a fixed pairwise tree.
struct TrajectoryEnsemble {
  long n_traj = 0;
  std::uint64_t seed = 0;
  std::vector<CoherenceEstimate> estimates;
};

// Discretization of the one-sided spectrum for harmonic synthesis:
// logarithmic bins from the cutoff to 0.1/t_s, linear bins up to 200/t_s.
struct FrequencyGrid {
  std::vector<double> omega;
  std::vector<double> domega;

  static FrequencyGrid standard(double omega_cut, double t_s, int n_modes = 4096);
  void validate(double t_s) const;
};

// Trapezoid integral of the toggling function times e^{i omega t} over one
// shot, per grid mode; the discretization the samplers share.
std::vector<std::complex<double>> mode_responses(const PulseSequence& pulses,
                                                 double t_s,
                                                 const FrequencyGrid& grid,
                                                 int n_time = 8192);

// White correlated dephasing: per step each sensor accumulates a phase
// increment g sqrt(gamma dt / 2) eta with eta iid standard normal, so the
// increment covariance is gamma dt A / 2, the classical unraveling of the
// dephasing generator.  Requires dt <= 0.01 / (gamma lambda_max).
TrajectoryEnsemble sample_white_correlated(const noise::DephasingMatrix& a,
                                           double t, double dt, long n_traj,
                                           std::uint64_t seed,
                                           const std::vector<CoherencePair>& pairs,
                                           int threads = 1);

// Single qubit against a synthesized power-law process under a pulse train.
TrajectoryEnsemble sample_colored_single(const filter::SpectralModel& spec,
                                         const PulseSequence& pulses, double t_s,
                                         const FrequencyGrid& grid, long n_traj,
                                         std::uint64_t seed, int threads = 1);

// N sensors driven by independent synthesized processes mixed through the
// symmetric factor of the unit-strength spatial matrix.
TrajectoryEnsemble sample_colored_spatial(const noise::DephasingMatrix& a_spatial,
                                          const filter::SpectralModel& spec,
                                          const PulseSequence& pulses, double t_s,
                                          const FrequencyGrid& grid, long n_traj,
                                          std::uint64_t seed,
                                          const std::vector<CoherencePair>& pairs,
                                          int threads = 1);

// Sampler self-test data: empirical covariance of single-step white increments
// against gamma dt A / 2, with the worst entry in units of its standard error.
struct IncrementCovarianceCheck {
  Eigen::MatrixXd empirical;
  Eigen::MatrixXd target;
  double max_sigma = 0.0;
};
IncrementCovarianceCheck white_increment_covariance(const noise::DephasingMatrix& a,
                                                    double dt, long n_samples,
                                                    std::uint64_t seed);

// Classical RK4 integration of the dephasing generator; independent route from
// the entrywise closed form.  Throws StepTooCoarse above the stability budget.
dynamics::QubitRegisterState lindblad_integrate(const dynamics::QubitRegisterState& state,
                                                const noise::DephasingMatrix& a,
                                                double t, double dt);

// QFI from the Uhlmann fidelity of states at xi -/+ dxi:
// 8 (1 - sqrt(F)) / (2 dxi)^2.
qfi::QfiResult fidelity_qfi(const Eigen::MatrixXcd& rho_minus,
                            const Eigen::MatrixXcd& rho_plus, double dxi);

}  // namespace corrsense::mc
