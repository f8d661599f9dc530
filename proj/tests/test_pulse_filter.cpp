// test_pulse_filter.cpp - filter functions, dephasing coefficients, shot-time optimizer.
#include <doctest.h>

#include <cmath>
#include <complex>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "corrsense/coefficient_golden.hpp"
#include "corrsense/pulse_filter.hpp"
#include "test_support.hpp"

using namespace corrsense;
using namespace corrsense::filter;
using test_support::abs_close;
using test_support::rel_close;

namespace {

constexpr double kPi = 3.14159265358979323846;

// Midpoint Riemann sum of f(t) e^{i omega t} between consecutive kinks; an
// independent route to the frequency response.
std::complex<double> filter_by_sum(const PulseSequence& seq, double t_s, double omega) {
  const auto kinks = toggle_kinks(seq);
  std::complex<double> total = 0.0;
  double sign = 1.0;
  for (std::size_t seg = 0; seg + 1 < kinks.theta.size(); ++seg) {
    const double a = kinks.theta[seg] * t_s;
    const double b = kinks.theta[seg + 1] * t_s;
    const int steps = 20000;
    const double h = (b - a) / steps;
    for (int i = 0; i < steps; ++i) {
      const double t = a + (i + 0.5) * h;
      total += sign * h * std::exp(std::complex<double>(0.0, omega * t));
    }
    sign = -sign;
  }
  return total;
}

}  // namespace

TEST_SUITE("pulse_filter") {

TEST_CASE("sequence builders and validation") {
  CHECK(PulseSequence::fid().k() == 0);
  CHECK(PulseSequence::hahn().thetas == std::vector<double>{0.5});
  CHECK(PulseSequence::cpmg(1).thetas == std::vector<double>{0.5});
  const std::vector<double> want_cpmg4{0.125, 0.375, 0.625, 0.875};
  CHECK(PulseSequence::cpmg(4).thetas == want_cpmg4);
  CHECK_THROWS_AS(PulseSequence::cpmg(0), std::invalid_argument);
  const PulseSequence unsorted{{0.5, 0.3}};
  CHECK_THROWS_AS(unsorted.validate(), std::invalid_argument);
  const PulseSequence at_zero{{0.0}};
  CHECK_THROWS_AS(at_zero.validate(), std::invalid_argument);
  const PulseSequence at_one{{1.0}};
  CHECK_THROWS_AS(at_one.validate(), std::invalid_argument);
  CHECK(PulseSequence::fid().label() == "fid");
  CHECK(PulseSequence::hahn().label() == "hahn");
  CHECK(PulseSequence::cpmg(4).label() == "cpmg4");
  CHECK(PulseSequence{{0.3}}.label() == "0.3");
}

TEST_CASE("toggle mean and balance") {
  CHECK(toggle_mean(PulseSequence::fid()) == 1.0);
  CHECK(toggle_mean(PulseSequence::hahn()) == 0.0);
  CHECK(std::abs(toggle_mean(PulseSequence::cpmg(3))) <= 1e-15);
  CHECK(abs_close(toggle_mean(PulseSequence{{0.3}}), -0.4, 1e-15));
  CHECK(dc_balanced(PulseSequence::hahn()));
  CHECK_FALSE(dc_balanced(PulseSequence::fid()));
  CHECK_FALSE(dc_balanced(PulseSequence{{0.3}}));
  const auto kinks = toggle_kinks(PulseSequence::hahn());
  const std::vector<double> want_weights{1.0, -2.0, 1.0};
  CHECK(kinks.weight == want_weights);
  double sum = 0.0;
  for (double w : kinks.weight) sum += w;
  CHECK(sum == 0.0);
}

TEST_CASE("filter function closed forms") {
  const double t_s = 1.3;
  CHECK(filter_function(PulseSequence::fid(), t_s, 0.0) ==
        std::complex<double>(t_s, 0.0));
  CHECK(std::abs(filter_function(PulseSequence::hahn(), t_s, 0.0)) <= 1e-15);
  for (double omega : {0.9, 3.7}) {
    const std::complex<double> i_omega(0.0, omega);
    const std::complex<double> fid_want =
        (std::exp(i_omega * t_s) - 1.0) / i_omega;
    CHECK(std::abs(filter_function(PulseSequence::fid(), t_s, omega) - fid_want) <=
          1e-12);
    const std::complex<double> hahn_want =
        (2.0 * std::exp(i_omega * (t_s / 2.0)) - 1.0 - std::exp(i_omega * t_s)) /
        i_omega;
    CHECK(std::abs(filter_function(PulseSequence::hahn(), t_s, omega) - hahn_want) <=
          1e-12);
  }
  // Uneven train against a literal Riemann sum.
  const PulseSequence uneven{{0.2, 0.45, 0.75}};
  const std::complex<double> got = filter_function(uneven, t_s, 2.3);
  CHECK(std::abs(got - filter_by_sum(uneven, t_s, 2.3)) <= 1e-6);
  // Conjugate symmetry of a real time signal.
  CHECK(std::abs(filter_function(uneven, t_s, -2.3) - std::conj(got)) <= 1e-15);
}

TEST_CASE("golden coefficient table recomputes") {
  for (const auto& row : golden_coefficients()) {
    const auto c = coefficient_closed_form(row.sequence, row.p);
    CHECK_MESSAGE(rel_close(c.value, row.value, 1e-12),
                  row.label << " p=" << row.p << " got " << c.value << " want "
                            << row.value);
  }
}

TEST_CASE("golden csv matches the frozen table") {
  std::ifstream in(std::string(CORRSENSE_SOURCE_DIR) + "/tests/golden/coefficients.csv");
  REQUIRE(in.good());
  std::string line;
  std::getline(in, line);
  CHECK(line == "label,thetas,p,value");
  const auto table = golden_coefficients();
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string label, thetas, p_str, value_str;
    std::getline(ss, label, ',');
    std::getline(ss, thetas, ',');
    std::getline(ss, p_str, ',');
    std::getline(ss, value_str, ',');
    const double p = std::stod(p_str);
    const double value = std::stod(value_str);
    bool found = false;
    for (const auto& row : table) {
      if (row.label == label && row.p == p) {
        CHECK_MESSAGE(row.value == value, label << " p=" << p);
        found = true;
        break;
      }
    }
    CHECK_MESSAGE(found, "csv row has no table entry: " << line);
    ++rows;
  }
  CHECK(rows == table.size());
}

TEST_CASE("pinned coefficient constants") {
  CHECK(coefficient_closed_form(PulseSequence::fid(), 0.0).value == 0.5);
  CHECK(abs_close(coefficient_closed_form(PulseSequence::hahn(), 1.0).value,
                  std::log(2.0) / (2.0 * kPi), 1e-12));
  CHECK(rel_close(coefficient_closed_form(PulseSequence::hahn(), 2.0).value,
                  1.0 / 24.0, 1e-12));
  CHECK(rel_close(coefficient_closed_form(PulseSequence::cpmg(2), 2.0).value,
                  1.0 / 96.0, 1e-12));
  CHECK(rel_close(coefficient_closed_form(PulseSequence::cpmg(4), 2.0).value,
                  1.0 / 384.0, 1e-12));
}

TEST_CASE("series expansion is continuous at the balanced pole") {
  const double at_pole = coefficient_closed_form(PulseSequence::hahn(), 1.0).value;
  for (double dp : {1e-7, -1e-7, 8e-7, -8e-7}) {
    const double near = coefficient_closed_form(PulseSequence::hahn(), 1.0 + dp).value;
    CHECK(abs_close(near, at_pole, 1e-6));
  }
  // Direct evaluation just outside the series window agrees with the series
  // just inside it.
  const double outside = coefficient_closed_form(PulseSequence::hahn(), 1.0 + 2e-6).value;
  const double inside = coefficient_closed_form(PulseSequence::hahn(), 1.0 + 9e-7).value;
  CHECK(abs_close(outside, inside, 1e-6));
}

TEST_CASE("exponent windows and poles") {
  CHECK(validity_p_max(PulseSequence::fid()) == 1.0);
  CHECK(validity_p_max(PulseSequence::hahn()) == 3.0);
  CHECK(validity_p_max(PulseSequence{{0.3}}) == 1.0);
  CHECK_NOTHROW(check_exponent_window(PulseSequence::hahn(), 1.0));
  CHECK_THROWS_AS(coefficient_closed_form(PulseSequence::fid(), 1.0), PoleError);
  CHECK_THROWS_AS(coefficient_closed_form(PulseSequence{{0.3}}, 1.0), PoleError);
  CHECK_THROWS_AS(coefficient_closed_form(PulseSequence::fid(), 1.5),
                  UnsupportedExponent);
  CHECK_THROWS_AS(coefficient_closed_form(PulseSequence{{0.3}}, 1.5),
                  UnsupportedExponent);
  CHECK_THROWS_AS(coefficient_closed_form(PulseSequence::hahn(), 3.0),
                  UnsupportedExponent);
  CHECK_THROWS_AS(coefficient_closed_form(PulseSequence::hahn(), -1.0),
                  UnsupportedExponent);
}

TEST_CASE("zeta closed form and cutoff warning") {
  const SpectralModel unit{1.0, 1.0, 0.0, CutoffShape::FlattenBelow};
  CHECK(rel_close(zeta_closed_form(unit, PulseSequence::hahn(), 2.0),
                  0.4412712003053032, 1e-12));
  const SpectralModel strong{1.0, 2.5, 0.0, CutoffShape::FlattenBelow};
  CHECK(rel_close(zeta_closed_form(strong, PulseSequence::hahn(), 2.0),
                  2.5 * 0.4412712003053032, 1e-12));
  bool warn = true;
  const SpectralModel mild{1.0, 1.0, 0.004, CutoffShape::FlattenBelow};
  zeta_closed_form(mild, PulseSequence::hahn(), 2.0, &warn);
  CHECK_FALSE(warn);
  const SpectralModel coarse{1.0, 1.0, 0.005, CutoffShape::FlattenBelow};
  zeta_closed_form(coarse, PulseSequence::hahn(), 2.0, &warn);
  CHECK(warn);
}

TEST_CASE("quadrature oracle agrees with the closed form") {
  const SpectralModel spec{0.5, 1.0, 1e-6, CutoffShape::FlattenBelow};
  const double closed =
      zeta_closed_form({0.5, 1.0, 0.0, CutoffShape::FlattenBelow},
                       PulseSequence::hahn(), 1.0);
  CHECK(rel_close(zeta_quadrature(spec, PulseSequence::hahn(), 1.0), closed, 1e-3));
  const SpectralModel tight{2.0, 1.0, 1e-12, CutoffShape::FlattenBelow};
  const double closed2 =
      zeta_closed_form({2.0, 1.0, 0.0, CutoffShape::FlattenBelow},
                       PulseSequence::cpmg(2), 1.0);
  CHECK(rel_close(zeta_quadrature(tight, PulseSequence::cpmg(2), 1.0, 1e-8, 1e-11),
                  closed2, 1e-6));
}

TEST_CASE("hard zero cutoff removes low frequency weight") {
  const PulseSequence seq = PulseSequence::hahn();
  const SpectralModel flat{0.5, 1.0, 0.3, CutoffShape::FlattenBelow};
  const SpectralModel zero{0.5, 1.0, 0.3, CutoffShape::HardZero};
  const double with_flat = zeta_quadrature(flat, seq, 1.0);
  const double with_zero = zeta_quadrature(zero, seq, 1.0);
  CHECK(with_zero < with_flat);
  const SpectralModel tiny{0.5, 1.0, 1e-8, CutoffShape::HardZero};
  const double closed = zeta_closed_form({0.5, 1.0, 0.0, CutoffShape::FlattenBelow},
                                         seq, 1.0);
  CHECK(rel_close(zeta_quadrature(tiny, seq, 1.0), closed, 1e-3));
}

TEST_CASE("filter norm integrates to the shot time") {
  CHECK(rel_close(filter_norm_quadrature(PulseSequence::hahn(), 0.7), 0.7, 1e-7));
  const PulseSequence uneven{{0.2, 0.45, 0.75}};
  CHECK(rel_close(filter_norm_quadrature(uneven, 1.3), 1.3, 1e-7));
}

TEST_CASE("shot time optimizer frozen values") {
  struct Row {
    double p, y0, t_opt, max_rate;
  };
  const Row rows[] = {
      {0.1, 0.088310843524777236, 0.24283699446891877, 0.16624627636470549},
      {0.5, 0.30292999806082471, 1.2364582120650771, 0.089114819161545775},
      {1.0, 0.43710874094624025, 1.9905447671976673, 0.068708581093144636},
      {2.0, 0.56313061495294958, 2.3819910579403478, 0.063879091337744082},
  };
  for (const auto& row : rows) {
    const SpectralModel spec{row.p, 1.0, 0.0, CutoffShape::FlattenBelow};
    const auto c = coefficient_closed_form(PulseSequence::hahn(), row.p);
    const auto opt = optimize_shot_time(spec, c);
    CHECK(rel_close(opt.y0, row.y0, 1e-9));
    CHECK(rel_close(opt.t_opt, row.t_opt, 1e-9));
    CHECK(rel_close(opt.max_rate, row.max_rate, 1e-9));
    // The reported rate is the single-qubit information per unit time at t_opt.
    CHECK(rel_close(single_qubit_qfi(spec, PulseSequence::hahn(), opt.t_opt) / opt.t_opt,
                    opt.max_rate, 1e-10));
  }
}

TEST_CASE("white noise optimizer prefers vanishing shots") {
  const SpectralModel spec{0.0, 2.0, 0.0, CutoffShape::FlattenBelow};
  const auto c = coefficient_closed_form(PulseSequence::fid(), 0.0);
  const auto opt = optimize_shot_time(spec, c);
  CHECK(opt.t_opt == 0.0);
  CHECK(rel_close(opt.max_rate, 0.125, 1e-12));  // C / (2 xi) = (1/2) / 4
}

TEST_CASE("optimizer rejects mismatched exponents") {
  const SpectralModel spec{1.0, 1.0, 0.0, CutoffShape::FlattenBelow};
  const auto c = coefficient_closed_form(PulseSequence::hahn(), 0.5);
  CHECK_THROWS_AS(optimize_shot_time(spec, c), std::invalid_argument);
}

TEST_CASE("objective limits and maximum") {
  CHECK(abs_close(g_of_y(1e-9, 0.0), 0.5, 1e-6));
  CHECK(g_of_y(0.3, 0.0) < g_of_y(0.1, 0.0));  // white noise: strictly decreasing
  const double y0 = 0.43710874094624025;       // maximizer at p = 1
  CHECK(g_of_y(y0, 1.0) > g_of_y(y0 - 0.1, 1.0));
  CHECK(g_of_y(y0, 1.0) > g_of_y(y0 + 0.1, 1.0));
}

}  // TEST_SUITE
