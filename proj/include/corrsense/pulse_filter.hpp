// pulse_filter.hpp - filter functions of pulse trains against power-law spectra:
// closed-form dephasing coefficients, quadrature oracles, shot-time optimization.
#pragma once

#include <complex>

#include "corrsense/errors.hpp"
#include "corrsense/pulse_sequence.hpp"

namespace corrsense::filter {

// How the spectrum behaves below the infrared cutoff omega_cut.
enum class CutoffShape {
  FlattenBelow,  // S constant at its value at omega_cut
  HardZero,      // S identically zero
};

// One-sided power-law dephasing spectrum S(omega) = xi * |omega|^-p above the
// cutoff, with the chosen shape below it.
struct SpectralModel {
  double p = 0.0;          // spectral exponent, > -1
  double xi = 1.0;         // strength, > 0
  double omega_cut = 0.0;  // infrared cutoff, >= 0
  CutoffShape cutoff_shape = CutoffShape::FlattenBelow;

  void validate() const {
    if (!(p > -1.0)) throw UnsupportedExponent("spectral exponent must be > -1");
    if (!(xi > 0.0)) throw std::invalid_argument("xi must be > 0");
    if (omega_cut < 0.0) throw std::invalid_argument("omega_cut must be >= 0");
  }
};

struct DephasingCoefficient {
  double value = 0.0;
  double p = 0.0;
  PulseSequence sequence;
};

struct ShotTimeOptimum {
  double y0 = 0.0;        // optimal dimensionless decay 2 * zeta(t_opt)... / 2
  double t_opt = 0.0;     // optimal shot time (0 when p == 0: shorter is always better)
  double max_rate = 0.0;  // information per unit total time at the optimum
};

// Upper edge of the spectral-exponent window where the cutoff-free closed form
// holds: 1 for sequences with DC weight (including free induction decay), 3 for
// DC-balanced trains.
double validity_p_max(const PulseSequence& seq);

// Throws UnsupportedExponent (window) or PoleError (genuinely divergent point).
void check_exponent_window(const PulseSequence& seq, double p);

// Frequency response F[omega] of the toggling function over one shot of length
// t_s.  F[0] = t_s * toggle_mean; |F|^2 integrates to 2 pi t_s over omega.
std::complex<double> filter_function(const PulseSequence& seq, double t_s, double omega);

// Cutoff-free dephasing coefficient C_theta(p): zeta = xi * t_s^(1+p) * C.
// Evaluated from the pairwise kink bracket; the only interior pole is p = 1,
// removable (series expansion) exactly when the sequence is DC balanced.
DephasingCoefficient coefficient_closed_form(const PulseSequence& seq, double p,
                                             double series_radius = 1e-6);

// zeta(t_s) from the closed form.  When omega_cut * t_s >= 0.01 the cutoff is
// no longer negligible; *cutoff_warning (if given) is set accordingly.
double zeta_closed_form(const SpectralModel& spec, const PulseSequence& seq,
                        double t_s, bool* cutoff_warning = nullptr);

// Independent oracle: adaptive Gauss-Kronrod quadrature of the spectral overlap
// integral with an analytic large-frequency tail.  Keeps the cutoff explicit.
double zeta_quadrature(const SpectralModel& spec, const PulseSequence& seq,
                       double t_s, double rel_tol = 1e-6, double tail_tol = 1e-9);

// integral of |F[omega]|^2 d omega / (2 pi); equals t_s for every sequence.
double filter_norm_quadrature(const PulseSequence& seq, double t_s,
                              double rel_tol = 1e-9, double tail_tol = 1e-8);

// Objective whose maximizer fixes the optimal shot time:
// g(y) = y^((1+2p)/(1+p)) / (e^(2y) - 1); g(0+) = 1/2 at p = 0, else 0.
double g_of_y(double y, double p);

// Maximizes information per unit total time over the shot time.
ShotTimeOptimum optimize_shot_time(const SpectralModel& spec,
                                   const DephasingCoefficient& c);

// Information about xi carried by one qubit interrogated for t_s:
// (t_s^(1+p) C)^2 / (e^(2 zeta) - 1).
double single_qubit_qfi(const SpectralModel& spec, const PulseSequence& seq, double t_s);

}  // namespace corrsense::filter
