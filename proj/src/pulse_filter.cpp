// pulse_filter.cpp
#include "corrsense/pulse_filter.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <queue>
#include <vector>

namespace corrsense::filter {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;
constexpr double kTwoPi = 2.0 * kPi;

// ---- pairwise kink geometry -------------------------------------------------

struct KinkPairs {
  std::vector<double> w;      // kink weights, size K + 2
  std::vector<double> th;     // kink positions
  std::vector<double> ww;     // w_j * w_k over pairs j < k
  std::vector<double> dth;    // theta_k - theta_j > 0 over the same pairs
  double sum_w2 = 0.0;        // sum_j w_j^2
};

KinkPairs kink_pairs(const PulseSequence& seq) {
  const ToggleKinks kk = toggle_kinks(seq);
  KinkPairs out;
  out.w = kk.weight;
  out.th = kk.theta;
  const std::size_t m = kk.weight.size();
  out.ww.reserve(m * (m - 1) / 2);
  out.dth.reserve(m * (m - 1) / 2);
  for (std::size_t j = 0; j < m; ++j) {
    out.sum_w2 += kk.weight[j] * kk.weight[j];
    for (std::size_t k = j + 1; k < m; ++k) {
      out.ww.push_back(kk.weight[j] * kk.weight[k]);
      out.dth.push_back(kk.theta[k] - kk.theta[j]);
    }
  }
  return out;
}

// Pairwise bracket B(p) = -sum_{j<k} w_j w_k D_{jk}^(1+p); the cutoff-free
// overlap integral reduces to B(p) / (2 cos(p pi / 2) Gamma(2 + p)).
double bracket(const KinkPairs& kp, double p) {
  double b = 0.0;
  for (std::size_t i = 0; i < kp.ww.size(); ++i) {
    b -= kp.ww[i] * std::pow(kp.dth[i], 1.0 + p);
  }
  return b;
}

// d^m B / dp^m at p = 1: each pair term carries a factor log(D)^m.
double bracket_deriv_at_one(const KinkPairs& kp, int m) {
  double b = 0.0;
  for (std::size_t i = 0; i < kp.ww.size(); ++i) {
    const double d = kp.dth[i];
    b -= kp.ww[i] * d * d * std::pow(std::log(d), m);
  }
  return b;
}

// C(1 + eps) for DC-balanced sequences.  The denominator factor
// 2 cos(p pi/2) Gamma(2+p) = -2 pi eps (1 + a eps + b eps^2 + c eps^3 + ...)
// and the bracket vanishes at p = 1, so the ratio is regular.
double series_at_one(const KinkPairs& kp, double eps) {
  constexpr double euler = 0.57721566490153286060651209008240243;
  constexpr double zeta3 = 1.20205690315959428539973816151144999;
  const double psi = 1.5 - euler;                  // digamma(3)
  const double psi1 = kPi * kPi / 6.0 - 1.25;     // trigamma(3)
  const double psi2 = -2.0 * (zeta3 - 1.125);     // tetragamma(3)
  const double a = psi;
  const double b = (psi * psi + psi1) / 2.0 - kPi * kPi / 24.0;
  const double c =
      (psi * psi * psi + 3.0 * psi * psi1 + psi2) / 6.0 - psi * kPi * kPi / 24.0;

  const double b1 = bracket_deriv_at_one(kp, 1);
  const double b2 = bracket_deriv_at_one(kp, 2);
  const double b3 = bracket_deriv_at_one(kp, 3);
  const double b4 = bracket_deriv_at_one(kp, 4);
  const double num = b1 + eps * (b2 / 2.0 + eps * (b3 / 6.0 + eps * b4 / 24.0));
  const double den = 1.0 + eps * (a + eps * (b + eps * c));
  return -num / (kTwoPi * den);
}

// ---- adaptive Gauss-Kronrod quadrature --------------------------------------

// 15-point Kronrod extension of 7-point Gauss (positive abscissae).
constexpr double xgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr double wgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double wg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double value;
  double error;
};

template <class F>
Panel gk15(const F& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double resk = wgk[7] * fc;
  double resg = wg[3] * fc;
  for (int i = 0; i < 7; ++i) {
    const double x = h * xgk[i];
    const double f1 = f(c - x);
    const double f2 = f(c + x);
    resk += wgk[i] * (f1 + f2);
    if (i % 2 == 1) resg += wg[(i - 1) / 2] * (f1 + f2);
  }
  return Panel{resk * h, std::abs((resk - resg) * h) * 10.0};
}

// Globally adaptive: always split the panel with the largest error estimate,
// stop once the summed estimate meets eps_abs or the panel budget runs out.
// The budget bounds the work when the tolerance sits below what the estimator
// can certify; the callers cross-check against independent routes anyway.
template <class F>
double adaptive_gk(const F& f, double a, double b, double eps_abs) {
  struct Seg {
    double a, b, value, error;
    bool operator<(const Seg& o) const { return error < o.error; }
  };
  const Panel first = gk15(f, a, b);
  std::priority_queue<Seg> queue;
  queue.push(Seg{a, b, first.value, first.error});
  double total_error = first.error;
  while (total_error > eps_abs && queue.size() < 4000) {
    const Seg s = queue.top();
    if (s.b - s.a <= 1e-300 || s.error == 0.0) break;
    queue.pop();
    const double m = 0.5 * (s.a + s.b);
    const Panel left = gk15(f, s.a, m);
    const Panel right = gk15(f, m, s.b);
    total_error += left.error + right.error - s.error;
    queue.push(Seg{s.a, m, left.value, left.error});
    queue.push(Seg{m, s.b, right.value, right.error});
  }
  double value = 0.0;
  while (!queue.empty()) {
    value += queue.top().value;
    queue.pop();
  }
  return value;
}

template <class F>
double integrate_segment(const F& f, double a, double b, double rel_tol,
                         double scale_hint) {
  if (!(b > a)) return 0.0;
  const Panel rough = gk15(f, a, b);
  const double eps =
      rel_tol * std::max(std::abs(rough.value), 0.1 * scale_hint) + 1e-300;
  return adaptive_gk(f, a, b, eps);
}

// |G(u)|^2 / u^2 where G(u) = sum_j w_j exp(i u theta_j); the subtracted form
// sum_j w_j (exp(i u theta_j) - 1) is stable for small u because the weights
// sum to zero.
struct GsqOverU2 {
  const KinkPairs& kp;
  double m1;  // sum_j w_j theta_j

  double operator()(double u) const {
    if (u == 0.0) return m1 * m1;
    double re = 0.0;
    double im = 0.0;
    for (std::size_t j = 0; j < kp.w.size(); ++j) {
      const double x = u * kp.th[j];
      const double s = std::sin(0.5 * x);
      re += kp.w[j] * (-2.0 * s * s);
      im += kp.w[j] * std::sin(x);
    }
    return (re * re + im * im) / (u * u);
  }
};

// Closed large-u tail of integral_U^inf |G(u)|^2 u^(-2-p) du via two
// integrations by parts of the oscillatory pair terms, plus a rigorous bound
// on the remainder.
struct TailEstimate {
  double value;
  double remainder_bound;
};

TailEstimate analytic_tail(const KinkPairs& kp, double p, double u) {
  const double s = 2.0 + p;
  const double t0 = kp.sum_w2 * std::pow(u, -1.0 - p) / (1.0 + p);
  double osc = 0.0;
  double rem = 0.0;
  for (std::size_t i = 0; i < kp.ww.size(); ++i) {
    const double d = kp.dth[i];
    const double c2 = 2.0 * kp.ww[i];
    const double sn = std::sin(u * d);
    const double cs = std::cos(u * d);
    // I(sigma) = integral_u^inf cos(d v) v^-sigma dv obeys
    // I(sigma) = A(sigma) - sigma (sigma + 1) / d^2 I(sigma + 2) with
    // A(sigma) = -sin(d u) u^-sigma / d + sigma cos(d u) u^-(sigma+1) / d^2.
    double chain = 1.0;
    double sigma = s;
    double val = 0.0;
    for (int k = 0; k < 3; ++k) {
      const double a = -sn * std::pow(u, -sigma) / d +
                       sigma * cs * std::pow(u, -sigma - 1.0) / (d * d);
      val += chain * a;
      chain *= -(sigma * (sigma + 1.0)) / (d * d);
      sigma += 2.0;
    }
    osc += c2 * val;
    rem += std::abs(c2 * chain) * std::pow(u, 1.0 - sigma) / (sigma - 1.0);
  }
  return TailEstimate{t0 + osc, rem};
}

// integral_0^inf |G(u)|^2 u^-2 s1(u) du with s1(u) = u^-p above u_c and the
// chosen cutoff shape below.  Structured as [0, u_c], [u_c, U0], then octave
// doubling with the analytic tail closing the integral once its remainder
// bound is negligible.
double spectrum_integral(const PulseSequence& seq, double p, double u_c,
                         CutoffShape shape, double rel_tol, double tail_tol) {
  const KinkPairs kp = kink_pairs(seq);
  double m1 = 0.0;
  for (std::size_t j = 0; j < kp.w.size(); ++j) m1 += kp.w[j] * kp.th[j];
  const GsqOverU2 gsq{kp, m1};

  double total = 0.0;
  if (u_c > 0.0 && shape == CutoffShape::FlattenBelow) {
    const double s_flat = std::pow(u_c, -p);
    total += s_flat * integrate_segment(gsq, 0.0, u_c, rel_tol, 0.0);
  }

  const auto phi = [&](double u) { return gsq(u) * std::pow(u, -p); };

  double u0 = kTwoPi;
  while (u0 <= u_c) u0 *= 2.0;
  total += integrate_segment(phi, u_c, u0, rel_tol, std::abs(total));

  double u = u0;
  for (int oct = 0; oct < 60; ++oct) {
    const TailEstimate tail = analytic_tail(kp, p, u);
    const double grand = total + tail.value;
    if (tail.remainder_bound <= tail_tol * std::max(std::abs(grand), 1e-300)) {
      return grand;
    }
    total += integrate_segment(phi, u, 2.0 * u, rel_tol, std::abs(total));
    u *= 2.0;
  }
  throw std::runtime_error("spectral quadrature tail failed to converge");
}

constexpr double kPoleEps = 1e-12;

}  // namespace

double validity_p_max(const PulseSequence& seq) {
  seq.validate();
  // Any residual DC weight leaves |F(0)|^2 > 0, so the cutoff-free integral
  // diverges from p = 1 just as it does for free induction decay.
  return dc_balanced(seq) ? 3.0 : 1.0;
}

void check_exponent_window(const PulseSequence& seq, double p) {
  seq.validate();
  if (!(p > -1.0)) {
    throw UnsupportedExponent("spectral exponent must be > -1");
  }
  const double pmax = validity_p_max(seq);
  if (seq.k() == 0 || !dc_balanced(seq)) {
    // A sequence with DC weight dephases against the infrared divergence at
    // p = 1; the cutoff-free coefficient has a genuine pole there.
    if (std::abs(p - 1.0) <= kPoleEps) {
      throw PoleError("dephasing coefficient diverges at p = 1 for sequences "
                      "that do not refocus static noise");
    }
  }
  if (p >= pmax) {
    throw UnsupportedExponent("spectral exponent outside the cutoff-free window");
  }
}

std::complex<double> filter_function(const PulseSequence& seq, double t_s,
                                     double omega) {
  if (!(t_s >= 0.0)) throw std::invalid_argument("t_s must be >= 0");
  const ToggleKinks kk = toggle_kinks(seq);
  if (omega == 0.0) {
    return {t_s * toggle_mean(seq), 0.0};
  }
  // F[omega] = -(1/(i omega)) sum_j w_j (e^{i omega theta_j t_s} - 1); the
  // subtraction is free because the weights sum to zero, and it keeps the sum
  // O(omega) rather than a difference of O(1) terms.
  double re = 0.0;
  double im = 0.0;
  for (std::size_t j = 0; j < kk.weight.size(); ++j) {
    const double x = omega * kk.theta[j] * t_s;
    const double s = std::sin(0.5 * x);
    re += kk.weight[j] * (-2.0 * s * s);  // cos(x) - 1
    im += kk.weight[j] * std::sin(x);
  }
  // -(re + i im) / (i omega) = (-im + i re) / omega
  return {-im / omega, re / omega};
}

DephasingCoefficient coefficient_closed_form(const PulseSequence& seq, double p,
                                             double series_radius) {
  check_exponent_window(seq, p);
  const KinkPairs kp = kink_pairs(seq);
  if (seq.k() >= 1 && dc_balanced(seq) && std::abs(p - 1.0) < series_radius) {
    return DephasingCoefficient{series_at_one(kp, p - 1.0), p, seq};
  }
  const double den = 2.0 * std::cos(0.5 * kPi * p) * std::tgamma(2.0 + p);
  return DephasingCoefficient{bracket(kp, p) / den, p, seq};
}

double zeta_closed_form(const SpectralModel& spec, const PulseSequence& seq,
                        double t_s, bool* cutoff_warning) {
  spec.validate();
  if (!(t_s >= 0.0)) throw std::invalid_argument("t_s must be >= 0");
  if (cutoff_warning != nullptr) {
    *cutoff_warning = (spec.omega_cut * t_s >= 0.01);
  }
  const DephasingCoefficient c = coefficient_closed_form(seq, spec.p);
  return spec.xi * std::pow(t_s, 1.0 + spec.p) * c.value;
}

double zeta_quadrature(const SpectralModel& spec, const PulseSequence& seq,
                       double t_s, double rel_tol, double tail_tol) {
  spec.validate();
  seq.validate();
  if (!(t_s > 0.0)) throw std::invalid_argument("t_s must be > 0");
  const double u_c = spec.omega_cut * t_s;
  if (u_c == 0.0) {
    // Without a cutoff the infrared end must be integrable on its own.
    const double pmax = (seq.k() >= 1 && dc_balanced(seq)) ? 3.0 : 1.0;
    if (spec.p >= pmax) {
      throw UnsupportedExponent(
          "spectral overlap integral diverges without an infrared cutoff");
    }
  }
  const double i = spectrum_integral(seq, spec.p, u_c, spec.cutoff_shape,
                                     rel_tol * 0.2, tail_tol);
  return spec.xi * std::pow(t_s, 1.0 + spec.p) * i / kTwoPi;
}

double filter_norm_quadrature(const PulseSequence& seq, double t_s,
                              double rel_tol, double tail_tol) {
  seq.validate();
  if (!(t_s > 0.0)) throw std::invalid_argument("t_s must be > 0");
  const double i = spectrum_integral(seq, 0.0, 0.0, CutoffShape::FlattenBelow,
                                     rel_tol * 0.2, tail_tol);
  return t_s * i / kPi;
}

double g_of_y(double y, double p) {
  if (!(p > -0.5)) throw UnsupportedExponent("g(y) requires p > -1/2");
  if (y < 0.0) throw std::invalid_argument("y must be >= 0");
  if (y == 0.0) return p == 0.0 ? 0.5 : 0.0;
  return std::pow(y, (1.0 + 2.0 * p) / (1.0 + p)) / std::expm1(2.0 * y);
}

ShotTimeOptimum optimize_shot_time(const SpectralModel& spec,
                                   const DephasingCoefficient& c) {
  spec.validate();
  if (!(spec.p >= 0.0)) {
    throw UnsupportedExponent("shot-time optimization requires p >= 0");
  }
  if (std::abs(spec.p - c.p) > 1e-12) {
    throw std::invalid_argument("coefficient exponent does not match the spectrum");
  }
  if (!(c.value > 0.0)) throw std::invalid_argument("coefficient must be > 0");

  const double p = spec.p;
  if (p == 0.0) {
    // g is maximized in the limit y -> 0: arbitrarily short shots win.
    return ShotTimeOptimum{0.0, 0.0, c.value / (2.0 * spec.xi)};
  }

  // Golden-section maximization of the unimodal g on (0, 5].
  const double gr = 0.61803398874989484820458683436563811;
  double a = 1e-12;
  double b = 5.0;
  double x1 = b - gr * (b - a);
  double x2 = a + gr * (b - a);
  double g1 = g_of_y(x1, p);
  double g2 = g_of_y(x2, p);
  while (b - a > 1e-10) {
    if (g1 > g2) {
      b = x2;
      x2 = x1;
      g2 = g1;
      x1 = b - gr * (b - a);
      g1 = g_of_y(x1, p);
    } else {
      a = x1;
      x1 = x2;
      g1 = g2;
      x2 = a + gr * (b - a);
      g2 = g_of_y(x2, p);
    }
  }
  const double y0 = 0.5 * (a + b);
  const double t_opt = std::pow(y0 / (spec.xi * c.value), 1.0 / (1.0 + p));
  const double max_rate = std::pow(spec.xi, -(1.0 + 2.0 * p) / (1.0 + p)) *
                          std::pow(c.value, 1.0 / (1.0 + p)) * g_of_y(y0, p);
  return ShotTimeOptimum{y0, t_opt, max_rate};
}

double single_qubit_qfi(const SpectralModel& spec, const PulseSequence& seq,
                        double t_s) {
  spec.validate();
  if (!(t_s >= 0.0)) throw std::invalid_argument("t_s must be >= 0");
  if (t_s == 0.0) return 0.0;
  const DephasingCoefficient c = coefficient_closed_form(seq, spec.p);
  const double x = std::pow(t_s, 1.0 + spec.p) * c.value;
  return x * x / std::expm1(2.0 * spec.xi * x);
}

}  // namespace corrsense::filter
