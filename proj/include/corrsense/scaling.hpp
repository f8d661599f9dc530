// scaling.hpp - entanglement-advantage scaling with sensor number: sweeps,
// power-law fits, and the theoretical exponent they are checked against.
#pragma once

#include <cstdint>
#include <vector>

#include "corrsense/pulse_filter.hpp"
#include "corrsense/pulse_sequence.hpp"

namespace corrsense::scaling {

struct SweepConfig {
  double alpha = 1.0;      // spatial decay exponent
  double p = 0.0;          // spectral exponent; 0 means white noise
  double xi = 1.0;         // noise strength
  double gamma = 1.0;      // base rate (white-noise case)
  double diag_scale = 2.0; // a_d
  std::vector<int> n_list; // sensor numbers, ascending, >= 4 points
  PulseSequence pulses = PulseSequence::hahn();

  void validate() const;
};

struct SweepPoint {
  int n = 0;
  double ratio = 1.0;     // entangled over separable advantage R(N)
  double t_opt = 0.0;     // optimal shot time (0 in the white-noise case)
  double collapse = 0.0;  // xi (t_opt N^((2-alpha)/(1+p)))^(1+p); 0 when p == 0
};

struct ScalingFit {
  double exponent = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  bool log_correction_detected = false;
};

struct SweepResult {
  std::vector<SweepPoint> points;
  ScalingFit fit;
};

enum class ExponentKind { PowerLaw, Log, Bounded };

struct TheoreticalExponent {
  ExponentKind kind = ExponentKind::PowerLaw;
  double exponent = 0.0;  // meaningful for PowerLaw only
};

// (1 - alpha - p) / (1 + p) when alpha + p < 1; Log at alpha + p = 1;
// Bounded above it.
TheoreticalExponent theoretical_exponent(double alpha, double p);

// R(N) for white noise from the Toeplitz matrix sums; no N x N allocation.
SweepResult sweep_markovian_advantage(const SweepConfig& cfg);

// R(N) for power-law spectra through the shot-time optimizer; the pulse-train
// coefficient cancels in the ratio but sets t_opt.
SweepResult sweep_nonmarkovian_advantage(const SweepConfig& cfg);

// Collapse diagnostic: the rescaled optimal decay xi (t_opt N^((2-alpha)/(1+p)))^(1+p)
// should be N-independent.  Reports max |value - mean| / mean.
struct CollapseResult {
  std::vector<SweepPoint> points;
  double max_rel_spread = 0.0;
};
CollapseResult topt_collapse_check(const SweepConfig& cfg);

// Least-squares fit of log R against log N after dropping the smallest
// max(1, n/4) sensor counts, where boundary effects dominate.
ScalingFit fit_power_law(const std::vector<int>& n, const std::vector<double>& r);

// Relative variation of R / ln N over the upper half of the grid; small values
// indicate a logarithmic growth law.
double log_ratio_variation(const std::vector<int>& n, const std::vector<double>& r);

// Relative variation of R itself over the upper half; small values indicate
// saturation.
double top_half_drift(const std::vector<double>& r);

// Geometrically spaced sensor counts from n_min to n_max inclusive.
std::vector<int> geometric_grid(int n_min, int n_max, int points);

}  // namespace corrsense::scaling
