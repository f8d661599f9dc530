// pulse_sequence.hpp - pi-pulse trains given as ordered fractions of the shot time.
#pragma once

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

namespace corrsense {

// K instantaneous pi pulses at times theta_l * t_s with 0 < theta_1 < ... < theta_K < 1.
// An empty sequence is free induction decay.
struct PulseSequence {
  std::vector<double> thetas;

  int k() const { return static_cast<int>(thetas.size()); }

  void validate() const {
    double prev = 0.0;
    for (double th : thetas) {
      if (!(th > prev && th < 1.0)) {
        throw std::invalid_argument(
            "pulse fractions must satisfy 0 < theta_1 < ... < theta_K < 1");
      }
      prev = th;
    }
  }

  static PulseSequence fid() { return {}; }
  static PulseSequence hahn() { return {{0.5}}; }

  // CPMG-style train: theta_l = (2l - 1) / (2k).
  static PulseSequence cpmg(int k) {
    if (k < 1) throw std::invalid_argument("cpmg order must be >= 1");
    PulseSequence s;
    s.thetas.reserve(k);
    for (int l = 1; l <= k; ++l) s.thetas.push_back((2.0 * l - 1.0) / (2.0 * k));
    return s;
  }

  // Canonical name when the train matches a named family, else the raw
  // fraction list; parsing the label back reproduces the sequence.
  std::string label() const {
    if (thetas.empty()) return "fid";
    const int n = k();
    bool is_cpmg = true;
    for (int l = 1; l <= n; ++l) {
      const double want = (2.0 * l - 1.0) / (2.0 * n);
      if (std::abs(thetas[static_cast<std::size_t>(l - 1)] - want) > 1e-12) {
        is_cpmg = false;
        break;
      }
    }
    if (is_cpmg) return n == 1 ? "hahn" : "cpmg" + std::to_string(n);
    std::string out;
    char buf[32];
    for (std::size_t i = 0; i < thetas.size(); ++i) {
      if (i) out += ",";
      std::snprintf(buf, sizeof(buf), "%.12g", thetas[i]);
      out += buf;
    }
    return out;
  }
};

// Jump decomposition of the +-1 toggling function f(t): writing
// f(t) = sum_j w_j * H(t - theta_j t_s) over kinks including the switch-on at 0
// and the switch-off at 1 gives w = {+1, 2(-1)^1, ..., 2(-1)^K, -(-1)^K}.
// The weights always sum to zero.
struct ToggleKinks {
  std::vector<double> theta;   // size K + 2, first 0, last 1
  std::vector<double> weight;  // same size
};

inline ToggleKinks toggle_kinks(const PulseSequence& seq) {
  seq.validate();
  const int k = seq.k();
  ToggleKinks out;
  out.theta.reserve(k + 2);
  out.weight.reserve(k + 2);
  out.theta.push_back(0.0);
  out.weight.push_back(1.0);
  double sign = 1.0;
  for (int l = 0; l < k; ++l) {
    sign = -sign;
    out.theta.push_back(seq.thetas[static_cast<std::size_t>(l)]);
    out.weight.push_back(2.0 * sign);
  }
  out.theta.push_back(1.0);
  out.weight.push_back(-sign);
  return out;
}

// Time average of the toggling function over one shot; zero exactly when the
// sequence refocuses a static field.
inline double toggle_mean(const PulseSequence& seq) {
  seq.validate();
  double mean = 0.0;
  double prev = 0.0;
  double sign = 1.0;
  for (double th : seq.thetas) {
    mean += sign * (th - prev);
    prev = th;
    sign = -sign;
  }
  mean += sign * (1.0 - prev);
  return mean;
}

inline bool dc_balanced(const PulseSequence& seq) {
  return std::abs(toggle_mean(seq)) < 1e-12;
}

}  // namespace corrsense
