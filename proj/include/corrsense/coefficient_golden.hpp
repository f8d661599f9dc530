// coefficient_golden.hpp - frozen dephasing coefficients.  Regenerated only by
// tools/gen_golden; every value was cross-validated against the independent
// spectral quadrature (tight cutoff, tail tolerance 1e-12) at generation time.
#pragma once

#include <vector>

#include "corrsense/pulse_sequence.hpp"

namespace corrsense::filter {

struct GoldenCoefficient {
  const char* label;
  PulseSequence sequence;
  double p;
  double value;
};

const std::vector<GoldenCoefficient>& golden_coefficients();

}  // namespace corrsense::filter
