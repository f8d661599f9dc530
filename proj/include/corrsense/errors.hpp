// errors.hpp - exception types shared across the library, grouped by CLI exit code.
#pragma once

#include <stdexcept>

namespace corrsense {

// Model construction violates a structural requirement (CLI exit 3).
struct PSDViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NegativeEntries : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Parameters leave the regime where a closed form is valid (CLI exit 4).
struct UnsupportedExponent : std::runtime_error {
  using std::runtime_error::runtime_error;
};
// The requested value is genuinely divergent, not just outside a window.
struct PoleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Unusable caller-supplied arguments (CLI exit 2).
struct StepTooCoarse : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct GridTooCoarse : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

}  // namespace corrsense
