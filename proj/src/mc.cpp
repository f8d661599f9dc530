// mc.cpp
#include "corrsense/mc.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "corrsense/dynamics.hpp"
#include "corrsense/errors.hpp"
#include "corrsense/rng.hpp"

namespace corrsense::mc {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;
constexpr double kTwoPi = 2.0 * kPi;

// Runs fn(i) for i in [0, n); each call must touch only its own output slot.
template <class Fn>
void parallel_trajectories(long n, int threads, const Fn& fn) {
  threads = std::clamp(threads, 1, 64);
  if (threads == 1 || n < 2) {
    for (long i = 0; i < n; ++i) fn(i);
    return;
  }
  const long chunk = (n + threads - 1) / threads;
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int w = 0; w < threads; ++w) {
    const long lo = static_cast<long>(w) * chunk;
    const long hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &fn] {
      for (long i = lo; i < hi; ++i) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

// Moment accumulator reduced over a fixed pairwise tree so the result depends
// only on the trajectory count, never on the thread layout.
struct Moments {
  double re = 0.0, im = 0.0, re2 = 0.0, im2 = 0.0;

  Moments operator+(const Moments& o) const {
    return Moments{re + o.re, im + o.im, re2 + o.re2, im2 + o.im2};
  }
};

Moments pairwise_moments(const std::complex<double>* samples, long lo, long hi) {
  if (hi - lo <= 8) {
    Moments m;
    for (long i = lo; i < hi; ++i) {
      const double r = samples[i].real();
      const double q = samples[i].imag();
      m.re += r;
      m.im += q;
      m.re2 += r * r;
      m.im2 += q * q;
    }
    return m;
  }
  const long mid = lo + (hi - lo) / 2;
  return pairwise_moments(samples, lo, mid) + pairwise_moments(samples, mid, hi);
}

CoherenceEstimate reduce_pair(const CoherencePair& pair,
                              const std::complex<double>* samples, long n) {
  const Moments m = pairwise_moments(samples, 0, n);
  const double dn = static_cast<double>(n);
  CoherenceEstimate est;
  est.row = pair.row;
  est.col = pair.col;
  est.mean = {m.re / dn, m.im / dn};
  if (n > 1) {
    const double var_re = std::max(0.0, (m.re2 - dn * est.mean.real() * est.mean.real()) / (dn - 1.0));
    const double var_im = std::max(0.0, (m.im2 - dn * est.mean.imag() * est.mean.imag()) / (dn - 1.0));
    est.stderr_re = std::sqrt(var_re / dn);
    est.stderr_im = std::sqrt(var_im / dn);
  }
  return est;
}

TrajectoryEnsemble reduce_ensemble(const std::vector<CoherencePair>& pairs,
                                   const std::vector<std::complex<double>>& slots,
                                   long n_traj, std::uint64_t seed) {
  TrajectoryEnsemble out;
  out.n_traj = n_traj;
  out.seed = seed;
  out.estimates.reserve(pairs.size());
  const std::size_t np = pairs.size();
  const std::size_t stride = static_cast<std::size_t>(n_traj);
  for (std::size_t k = 0; k < np; ++k) {
    out.estimates.push_back(reduce_pair(pairs[k], slots.data() + k * stride, n_traj));
  }
  return out;
}

void check_pairs(const std::vector<CoherencePair>& pairs, long dim) {
  if (pairs.empty()) throw std::invalid_argument("need at least one coherence pair");
  for (const auto& pr : pairs) {
    if (pr.row < 0 || pr.row >= dim || pr.col < 0 || pr.col >= dim) {
      throw std::invalid_argument("coherence pair index out of range");
    }
  }
}

double white_step_budget(const noise::DephasingMatrix& a) {
  return 0.01 / (a.gamma * noise::max_eigenvalue(a.entries));
}

}  // namespace

FrequencyGrid FrequencyGrid::standard(double omega_cut, double t_s, int n_modes) {
  if (!(omega_cut > 0.0)) {
    throw std::invalid_argument("synthesis grid needs a positive infrared cutoff");
  }
  if (!(t_s > 0.0)) throw std::invalid_argument("t_s must be > 0");
  if (n_modes < 512) throw GridTooCoarse("need at least 512 modes");
  const double split = 0.1 / t_s;
  const double top = 200.0 / t_s;
  if (!(omega_cut < split)) {
    throw std::invalid_argument("cutoff must sit below 0.1 / t_s for the standard grid");
  }
  const int n_log = n_modes / 2;
  const int n_lin = n_modes - n_log;

  FrequencyGrid g;
  g.omega.reserve(n_modes);
  g.domega.reserve(n_modes);
  const double ratio = std::pow(split / omega_cut, 1.0 / n_log);
  double lo = omega_cut;
  for (int k = 0; k < n_log; ++k) {
    const double hi = (k + 1 == n_log) ? split : lo * ratio;
    g.omega.push_back(std::sqrt(lo * hi));
    g.domega.push_back(hi - lo);
    lo = hi;
  }
  const double step = (top - split) / n_lin;
  for (int k = 0; k < n_lin; ++k) {
    g.omega.push_back(split + (k + 0.5) * step);
    g.domega.push_back(step);
  }
  return g;
}

void FrequencyGrid::validate(double t_s) const {
  if (omega.size() != domega.size() || omega.empty()) {
    throw std::invalid_argument("malformed frequency grid");
  }
  if (omega.size() < 512) throw GridTooCoarse("need at least 512 modes");
  double prev = 0.0;
  for (std::size_t i = 0; i < omega.size(); ++i) {
    if (!(omega[i] > prev) || !(domega[i] > 0.0)) {
      throw std::invalid_argument("grid modes must be positive and ascending");
    }
    prev = omega[i];
  }
  if (omega.back() * t_s < 200.0 * 0.999) {
    throw GridTooCoarse("grid must extend to 200 / t_s");
  }
}

std::vector<std::complex<double>> mode_responses(const PulseSequence& pulses,
                                                 double t_s,
                                                 const FrequencyGrid& grid,
                                                 int n_time) {
  pulses.validate();
  if (!(t_s > 0.0)) throw std::invalid_argument("t_s must be > 0");
  if (n_time < 256) throw GridTooCoarse("need at least 256 time points");

  // Segment boundaries of the toggling function, in absolute time.
  std::vector<double> edges;
  edges.reserve(pulses.k() + 2);
  edges.push_back(0.0);
  for (double th : pulses.thetas) edges.push_back(th * t_s);
  edges.push_back(t_s);

  std::vector<std::complex<double>> w(grid.omega.size(), {0.0, 0.0});
  for (std::size_t seg = 0; seg + 1 < edges.size(); ++seg) {
    const double a = edges[seg];
    const double b = edges[seg + 1];
    const double sign = (seg % 2 == 0) ? 1.0 : -1.0;
    const int npts = std::max(
        2L, std::lround(static_cast<double>(n_time) * (b - a) / t_s));
    const double d = (b - a) / (npts - 1);
    for (std::size_t m = 0; m < grid.omega.size(); ++m) {
      const double om = grid.omega[m];
      // Trapezoid sum of e^{i om t}: Dirichlet kernel for the uniform comb,
      // then endpoint halving.
      const double x = om * d;
      double comb_mag;
      const double sx = std::sin(0.5 * x);
      if (std::abs(sx) < 1e-300) {
        comb_mag = static_cast<double>(npts);
      } else {
        comb_mag = std::sin(0.5 * npts * x) / sx;
      }
      const double mid_phase = om * a + 0.5 * (npts - 1) * x;
      const std::complex<double> comb =
          comb_mag * std::complex<double>(std::cos(mid_phase), std::sin(mid_phase));
      const std::complex<double> ea{std::cos(om * a), std::sin(om * a)};
      const std::complex<double> eb{std::cos(om * b), std::sin(om * b)};
      w[m] += sign * d * (comb - 0.5 * ea - 0.5 * eb);
    }
  }
  return w;
}

TrajectoryEnsemble sample_white_correlated(const noise::DephasingMatrix& a,
                                           double t, double dt, long n_traj,
                                           std::uint64_t seed,
                                           const std::vector<CoherencePair>& pairs,
                                           int threads) {
  if (!(t > 0.0)) throw std::invalid_argument("t must be > 0");
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be > 0");
  if (n_traj < 2) throw std::invalid_argument("need at least 2 trajectories");
  const int n = a.n();
  const long dim = 1L << n;
  check_pairs(pairs, dim);
  const double budget = white_step_budget(a);
  if (dt > budget * (1.0 + 1e-9)) {
    throw StepTooCoarse("dt exceeds 0.01 / (gamma lambda_max)");
  }

  const Eigen::MatrixXd g = noise::factor_sqrt(a).entries;
  const long n_steps = std::lround(std::ceil(t / dt - 1e-12));
  const double h = t / static_cast<double>(n_steps);
  // Increment covariance gamma h A / 2: the unraveling of the generator
  // (gamma/2) sum_jl A_jl (h_l rho h_j - ...) with h = Z/2, so the ensemble
  // average lands exactly on evolve_markovian.
  const double amp = std::sqrt(0.5 * a.gamma * h);

  // Half Z-eigenvalue differences per tracked pair.
  const std::size_t np = pairs.size();
  Eigen::MatrixXd dz(static_cast<long>(np), n);
  for (std::size_t k = 0; k < np; ++k) {
    for (int j = 0; j < n; ++j) {
      dz(static_cast<long>(k), j) =
          0.5 * (dynamics::z_value(pairs[k].row, j) - dynamics::z_value(pairs[k].col, j));
    }
  }

  std::vector<std::complex<double>> slots(np * static_cast<std::size_t>(n_traj));
  parallel_trajectories(n_traj, threads, [&](long i) {
    rng::SplitMix64 gen(rng::substream_seed(seed, static_cast<std::uint64_t>(i)));
    Eigen::VectorXd eta(n);
    Eigen::VectorXd phi = Eigen::VectorXd::Zero(n);
    for (long s = 0; s < n_steps; ++s) {
      for (int j = 0; j < n; ++j) eta(j) = gen.normal();
      phi.noalias() += amp * (g * eta);
    }
    for (std::size_t k = 0; k < np; ++k) {
      const double ang = dz.row(static_cast<long>(k)).dot(phi);
      slots[k * static_cast<std::size_t>(n_traj) + static_cast<std::size_t>(i)] = {
          std::cos(ang), -std::sin(ang)};
    }
  });
  return reduce_ensemble(pairs, slots, n_traj, seed);
}

namespace {

// Mode amplitudes sqrt(2 S(omega) domega / pi) for the chosen spectrum.
std::vector<double> mode_amplitudes(const filter::SpectralModel& spec,
                                    const FrequencyGrid& grid) {
  std::vector<double> amp(grid.omega.size());
  for (std::size_t m = 0; m < grid.omega.size(); ++m) {
    const double om = grid.omega[m];
    double s;
    if (om >= spec.omega_cut) {
      s = spec.xi * std::pow(om, -spec.p);
    } else if (spec.cutoff_shape == filter::CutoffShape::FlattenBelow) {
      s = spec.xi * std::pow(spec.omega_cut, -spec.p);
    } else {
      s = 0.0;
    }
    amp[m] = std::sqrt(2.0 * s * grid.domega[m] / kPi);
  }
  return amp;
}

}  // namespace

TrajectoryEnsemble sample_colored_single(const filter::SpectralModel& spec,
                                         const PulseSequence& pulses, double t_s,
                                         const FrequencyGrid& grid, long n_traj,
                                         std::uint64_t seed, int threads) {
  spec.validate();
  if (n_traj < 2) throw std::invalid_argument("need at least 2 trajectories");
  grid.validate(t_s);
  const std::vector<std::complex<double>> w = mode_responses(pulses, t_s, grid);
  const std::vector<double> amp = mode_amplitudes(spec, grid);
  const std::size_t nm = grid.omega.size();

  const std::vector<CoherencePair> pairs{{0, 1}};
  std::vector<std::complex<double>> slots(static_cast<std::size_t>(n_traj));
  parallel_trajectories(n_traj, threads, [&](long i) {
    rng::SplitMix64 gen(rng::substream_seed(seed, static_cast<std::uint64_t>(i)));
    double phase = 0.0;
    for (std::size_t m = 0; m < nm; ++m) {
      const double ph = kTwoPi * gen.uniform01();
      phase += amp[m] * (std::cos(ph) * w[m].real() - std::sin(ph) * w[m].imag());
    }
    slots[static_cast<std::size_t>(i)] = {std::cos(phase), -std::sin(phase)};
  });
  return reduce_ensemble(pairs, slots, n_traj, seed);
}

TrajectoryEnsemble sample_colored_spatial(const noise::DephasingMatrix& a_spatial,
                                          const filter::SpectralModel& spec,
                                          const PulseSequence& pulses, double t_s,
                                          const FrequencyGrid& grid, long n_traj,
                                          std::uint64_t seed,
                                          const std::vector<CoherencePair>& pairs,
                                          int threads) {
  spec.validate();
  if (n_traj < 2) throw std::invalid_argument("need at least 2 trajectories");
  grid.validate(t_s);
  const int n = a_spatial.n();
  check_pairs(pairs, 1L << n);
  const Eigen::MatrixXd g = noise::factor_sqrt(a_spatial).entries;
  const std::vector<std::complex<double>> w = mode_responses(pulses, t_s, grid);
  const std::vector<double> amp = mode_amplitudes(spec, grid);
  const std::size_t nm = grid.omega.size();

  const std::size_t np = pairs.size();
  Eigen::MatrixXd dz(static_cast<long>(np), n);
  for (std::size_t k = 0; k < np; ++k) {
    for (int j = 0; j < n; ++j) {
      dz(static_cast<long>(k), j) =
          0.5 * (dynamics::z_value(pairs[k].row, j) - dynamics::z_value(pairs[k].col, j));
    }
  }

  std::vector<std::complex<double>> slots(np * static_cast<std::size_t>(n_traj));
  parallel_trajectories(n_traj, threads, [&](long i) {
    rng::SplitMix64 gen(rng::substream_seed(seed, static_cast<std::uint64_t>(i)));
    Eigen::VectorXd beta(n);
    for (int m_proc = 0; m_proc < n; ++m_proc) {
      double b = 0.0;
      for (std::size_t m = 0; m < nm; ++m) {
        const double ph = kTwoPi * gen.uniform01();
        b += amp[m] * (std::cos(ph) * w[m].real() - std::sin(ph) * w[m].imag());
      }
      beta(m_proc) = b;
    }
    const Eigen::VectorXd phi = g * beta;
    for (std::size_t k = 0; k < np; ++k) {
      const double ang = dz.row(static_cast<long>(k)).dot(phi);
      slots[k * static_cast<std::size_t>(n_traj) + static_cast<std::size_t>(i)] = {
          std::cos(ang), -std::sin(ang)};
    }
  });
  return reduce_ensemble(pairs, slots, n_traj, seed);
}

IncrementCovarianceCheck white_increment_covariance(const noise::DephasingMatrix& a,
                                                    double dt, long n_samples,
                                                    std::uint64_t seed) {
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be > 0");
  if (n_samples < 100) throw std::invalid_argument("need at least 100 samples");
  const int n = a.n();
  const Eigen::MatrixXd g = noise::factor_sqrt(a).entries;
  const double amp = std::sqrt(0.5 * a.gamma * dt);

  Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(n, n);
  Eigen::VectorXd eta(n);
  for (long i = 0; i < n_samples; ++i) {
    rng::SplitMix64 gen(rng::substream_seed(seed, static_cast<std::uint64_t>(i)));
    for (int j = 0; j < n; ++j) eta(j) = gen.normal();
    const Eigen::VectorXd dw = amp * (g * eta);
    acc.noalias() += dw * dw.transpose();
  }

  IncrementCovarianceCheck out;
  out.empirical = acc / static_cast<double>(n_samples);
  out.target = (0.5 * a.gamma * dt) * a.entries;
  double worst = 0.0;
  for (int j = 0; j < n; ++j) {
    for (int l = 0; l < n; ++l) {
      const double var =
          out.target(j, j) * out.target(l, l) + out.target(j, l) * out.target(j, l);
      const double se = std::sqrt(var / static_cast<double>(n_samples));
      worst = std::max(worst, std::abs(out.empirical(j, l) - out.target(j, l)) / se);
    }
  }
  out.max_sigma = worst;
  return out;
}

dynamics::QubitRegisterState lindblad_integrate(const dynamics::QubitRegisterState& state,
                                                const noise::DephasingMatrix& a,
                                                double t, double dt) {
  state.validate_basic();
  if (a.n() != state.n_qubits) {
    throw std::invalid_argument("coefficient matrix size does not match register");
  }
  if (!(t >= 0.0)) throw std::invalid_argument("t must be >= 0");
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be > 0");
  const double budget = white_step_budget(a);
  if (dt > budget * (1.0 + 1e-9)) {
    throw StepTooCoarse("dt exceeds 0.01 / (gamma lambda_max)");
  }
  if (t == 0.0) return state;

  const long n_steps = std::lround(std::ceil(t / dt - 1e-12));
  const double h = t / static_cast<double>(n_steps);

  Eigen::MatrixXcd rho = state.matrix;
  for (long s = 0; s < n_steps; ++s) {
    const Eigen::MatrixXcd k1 = dynamics::lindblad_rhs(rho, a);
    const Eigen::MatrixXcd k2 = dynamics::lindblad_rhs(rho + (0.5 * h) * k1, a);
    const Eigen::MatrixXcd k3 = dynamics::lindblad_rhs(rho + (0.5 * h) * k2, a);
    const Eigen::MatrixXcd k4 = dynamics::lindblad_rhs(rho + h * k3, a);
    rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }

  if (std::abs(rho.trace() - std::complex<double>(1.0, 0.0)) > 1e-10) {
    throw std::runtime_error("integrator lost trace normalization");
  }
  dynamics::QubitRegisterState out = state;
  out.matrix = std::move(rho);
  return out;
}

qfi::QfiResult fidelity_qfi(const Eigen::MatrixXcd& rho_minus,
                            const Eigen::MatrixXcd& rho_plus, double dxi) {
  if (!(dxi > 0.0)) throw std::invalid_argument("dxi must be > 0");
  if (rho_minus.rows() != rho_minus.cols() || rho_plus.rows() != rho_plus.cols() ||
      rho_minus.rows() != rho_plus.rows()) {
    throw std::invalid_argument("states must be square and equal-sized");
  }
  for (const auto* rho : {&rho_minus, &rho_plus}) {
    if ((*rho - rho->adjoint()).cwiseAbs().maxCoeff() > 1e-10) {
      throw std::invalid_argument("states must be Hermitian");
    }
    if (std::abs(rho->trace() - std::complex<double>(1.0, 0.0)) > 1e-8) {
      throw std::invalid_argument("states must have unit trace");
    }
  }

  // Tr sqrt(sqrt(rho) sigma sqrt(rho)) equals the nuclear norm of
  // sqrt(sigma) sqrt(rho).  Summing singular values of the product instead of
  // square roots of eigenvalues of the sandwich keeps full absolute accuracy
  // for small eigenvalues, which the difference 1 - sqrt(F) amplifies by
  // 1 / dxi^2.
  auto hermitian_sqrt = [](const Eigen::MatrixXcd& rho, const char* which) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho);
    if (es.eigenvalues().minCoeff() < -1e-10) {
      throw std::invalid_argument(std::string(which) +
                                  " must be positive semidefinite");
    }
    const Eigen::VectorXcd sq =
        es.eigenvalues().cwiseMax(0.0).cwiseSqrt().cast<std::complex<double>>();
    return Eigen::MatrixXcd(es.eigenvectors() * sq.asDiagonal() *
                            es.eigenvectors().adjoint());
  };
  const Eigen::MatrixXcd sqrt_m = hermitian_sqrt(rho_minus, "rho_minus");
  const Eigen::MatrixXcd sqrt_p = hermitian_sqrt(rho_plus, "rho_plus");
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(sqrt_p * sqrt_m);
  const double sqrt_fid = svd.singularValues().sum();
  const double value = std::max(0.0, 8.0 * (1.0 - sqrt_fid) / (4.0 * dxi * dxi));
  return qfi::QfiResult{value, qfi::QfiMethod::FidelityFD};
}

}  // namespace corrsense::mc
