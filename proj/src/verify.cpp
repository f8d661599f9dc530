// verify.cpp
#include "corrsense/verify.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstring>
#include <stdexcept>

#include "corrsense/coefficient_golden.hpp"
#include "corrsense/dynamics.hpp"
#include "corrsense/io.hpp"
#include "corrsense/mc.hpp"
#include "corrsense/noise_model.hpp"
#include "corrsense/pulse_filter.hpp"
#include "corrsense/qfi.hpp"
#include "corrsense/register_state.hpp"
#include "corrsense/rng.hpp"

namespace corrsense::verify {

namespace {

using noise::DephasingMatrix;

std::string num(double v) { return io::fmt_human(v); }

void push(std::vector<CheckResult>& out, std::string name, bool pass,
          std::string detail) {
  out.push_back(CheckResult{std::move(name), pass, std::move(detail)});
}

// ---- deterministic random case material -------------------------------------

Eigen::MatrixXd random_psd(rng::SplitMix64& gen, int n, double max_eig) {
  Eigen::MatrixXd b(n, n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) b(r, c) = gen.uniform(-1.0, 1.0);
  }
  Eigen::MatrixXd a = b.transpose() * b + 0.1 * Eigen::MatrixXd::Identity(n, n);
  return a * (max_eig / noise::max_eigenvalue(a));
}

Eigen::VectorXcd random_pure(rng::SplitMix64& gen, long d) {
  Eigen::VectorXcd v(d);
  for (long i = 0; i < d; ++i) v(i) = std::complex<double>(gen.normal(), gen.normal());
  return v / v.norm();
}

Eigen::VectorXcd random_product(rng::SplitMix64& gen, int n_qubits) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Ones(1);
  for (int q = 0; q < n_qubits; ++q) {
    Eigen::Vector2cd a;
    a << std::complex<double>(gen.normal(), gen.normal()),
        std::complex<double>(gen.normal(), gen.normal());
    a.normalize();
    Eigen::VectorXcd w(2 * v.size());
    for (long r = 0; r < v.size(); ++r) {
      w(r) = v(r) * a(0);
      w(r + v.size()) = v(r) * a(1);
    }
    v.swap(w);
  }
  return v;
}

PulseSequence random_spaced_sequence(rng::SplitMix64& gen, int k, double min_gap) {
  for (int attempt = 0; attempt < 10000; ++attempt) {
    std::vector<double> th(k);
    for (int i = 0; i < k; ++i) th[i] = gen.uniform01();
    std::sort(th.begin(), th.end());
    bool ok = th.front() >= min_gap && th.back() <= 1.0 - min_gap;
    for (int i = 1; ok && i < k; ++i) ok = (th[i] - th[i - 1]) >= min_gap;
    if (ok) return PulseSequence{std::move(th)};
  }
  throw std::runtime_error("could not draw a spaced pulse sequence");
}

// ---- lindblad suite ---------------------------------------------------------

std::vector<CheckResult> suite_lindblad(std::uint64_t seed, int /*threads*/) {
  std::vector<CheckResult> out;

  // Closed-form entrywise damping against the RK4-integrated operator sum.
  {
    double worst = 0.0;
    for (int c = 0; c < 50; ++c) {
      rng::SplitMix64 gen(rng::substream_seed(seed, 100 + c));
      const int n = 1 + c % 4;
      DephasingMatrix a{random_psd(gen, n, gen.uniform(0.5, 2.5)),
                        gen.uniform(0.5, 2.0)};
      const auto psi = random_pure(gen, 1L << n);
      const auto rho0 = dynamics::from_pure(n, psi);
      const double t = gen.uniform(0.2, 1.0);
      const double dt = 0.009 / (a.gamma * noise::max_eigenvalue(a.entries));
      const auto closed = dynamics::evolve_markovian(rho0, a, t);
      const auto rk4 = mc::lindblad_integrate(rho0, a, t, dt);
      worst = std::max(worst,
                       (closed.matrix - rk4.matrix).cwiseAbs().maxCoeff());
    }
    push(out, "closed-vs-rk4", worst <= 1e-7,
         "50 random cases, max_entry_err=" + num(worst) + " tol=1e-07");
  }

  // RK4 error falls by ~2^4 when the step halves.
  {
    rng::SplitMix64 gen(rng::substream_seed(seed, 200));
    DephasingMatrix a{random_psd(gen, 2, 2.0), 2.0};
    const auto rho0 = dynamics::from_pure(2, random_pure(gen, 4));
    const double t = 1.0;
    const double dt = 0.01 / (a.gamma * noise::max_eigenvalue(a.entries));
    const auto exact = dynamics::evolve_markovian(rho0, a, t);
    const double e1 =
        (mc::lindblad_integrate(rho0, a, t, dt).matrix - exact.matrix)
            .cwiseAbs()
            .maxCoeff();
    const double e2 =
        (mc::lindblad_integrate(rho0, a, t, dt / 2.0).matrix - exact.matrix)
            .cwiseAbs()
            .maxCoeff();
    const double ratio = e1 / e2;
    push(out, "rk4-order-4", ratio > 8.0 && ratio < 40.0,
         "err(dt)/err(dt/2)=" + num(ratio) + " expected ~16");
  }

  // Semigroup property of the closed form.
  {
    rng::SplitMix64 gen(rng::substream_seed(seed, 300));
    DephasingMatrix a{random_psd(gen, 3, 1.5), 1.2};
    const auto rho0 = dynamics::from_pure(3, random_pure(gen, 8));
    const auto two_step = dynamics::evolve_markovian(
        dynamics::evolve_markovian(rho0, a, 0.3), a, 0.5);
    const auto one_step = dynamics::evolve_markovian(rho0, a, 0.8);
    const double err = (two_step.matrix - one_step.matrix).cwiseAbs().maxCoeff();
    push(out, "semigroup", err <= 1e-12, "max_entry_err=" + num(err));
  }

  // Populations and trace are untouched; coherence magnitudes never grow.
  {
    rng::SplitMix64 gen(rng::substream_seed(seed, 400));
    DephasingMatrix a{random_psd(gen, 3, 1.5), 1.0};
    const auto rho0 = dynamics::from_pure(3, random_pure(gen, 8));
    const auto rho1 = dynamics::evolve_markovian(rho0, a, 0.7);
    double pop_err = 0.0;
    bool monotone = true;
    for (long r = 0; r < 8; ++r) {
      pop_err = std::max(pop_err, std::abs(rho1.matrix(r, r) - rho0.matrix(r, r)));
      for (long c = 0; c < 8; ++c) {
        if (std::abs(rho1.matrix(r, c)) > std::abs(rho0.matrix(r, c)) + 1e-15) {
          monotone = false;
        }
      }
    }
    push(out, "populations-preserved", pop_err <= 1e-15 && monotone,
         "max_pop_drift=" + num(pop_err));
  }

  // The generator is traceless and maps Hermitian to Hermitian.
  {
    rng::SplitMix64 gen(rng::substream_seed(seed, 500));
    DephasingMatrix a{random_psd(gen, 3, 2.0), 0.8};
    const auto rho0 = dynamics::from_pure(3, random_pure(gen, 8));
    const Eigen::MatrixXcd rhs = dynamics::lindblad_rhs(rho0.matrix, a);
    const double tr = std::abs(rhs.trace());
    const double herm = (rhs - rhs.adjoint()).cwiseAbs().maxCoeff();
    push(out, "rhs-structure", tr <= 1e-12 && herm <= 1e-12,
         "trace=" + num(tr) + " herm_defect=" + num(herm));
  }

  // Zero coupling matrix leaves every state fixed.
  {
    rng::SplitMix64 gen(rng::substream_seed(seed, 600));
    DephasingMatrix a{Eigen::MatrixXd::Zero(2, 2), 1.0};
    const auto rho0 = dynamics::from_pure(2, random_pure(gen, 4));
    const auto rho1 = dynamics::evolve_markovian(rho0, a, 2.0);
    const double err = (rho1.matrix - rho0.matrix).cwiseAbs().maxCoeff();
    push(out, "zero-coupling-identity", err == 0.0, "max_entry_err=" + num(err));
  }

  return out;
}

// ---- qfi-oracle suite -------------------------------------------------------

std::vector<CheckResult> suite_qfi_oracle(std::uint64_t seed, int /*threads*/) {
  std::vector<CheckResult> out;

  // Short-time rate against SLD values Richardson-extrapolated to t -> 0.
  {
    double worst = 0.0;
    for (int n = 2; n <= 4; ++n) {
      noise::PowerLawSpatialModel model;
      model.n_sensors = n;
      model.alpha = 1.0;
      model.xi = 1.0;
      const DephasingMatrix a = noise::build_dephasing_matrix(model, 1.0);
      for (int which = 0; which < 2; ++which) {
        const Eigen::VectorXcd psi = which == 0
                                         ? dynamics::ghz_amplitudes(n)
                                         : dynamics::plus_product_amplitudes(n);
        const double rate = qfi::fq_short_time(psi, a, 1.0);
        const auto rho0 = dynamics::from_pure(n, psi);
        const double dt1 = 1e-2;
        const double dt2 = 1e-3;
        const auto e1 =
            dynamics::evolve_markovian_with_xi_derivative(rho0, a, 1.0, dt1);
        const auto e2 =
            dynamics::evolve_markovian_with_xi_derivative(rho0, a, 1.0, dt2);
        const double v1 = qfi::qfi_sld(e1.rho, e1.drho_dxi).value / dt1;
        const double v2 = qfi::qfi_sld(e2.rho, e2.drho_dxi).value / dt2;
        const double extrap = (dt1 * v2 - dt2 * v1) / (dt1 - dt2);
        worst = std::max(worst, std::abs(extrap - rate) / rate);
      }
    }
    push(out, "short-time-rate-richardson", worst <= 1e-3,
         "ghz+product n=2..4, max_rel_err=" + num(worst) + " tol=0.001");
  }

  // SLD route against the fidelity finite-difference route on dephased states.
  {
    double worst = 0.0;
    for (int c = 0; c < 20; ++c) {
      rng::SplitMix64 gen(rng::substream_seed(seed, 700 + c));
      const int n = 1 + c % 3;
      const Eigen::MatrixXd base = random_psd(gen, n, gen.uniform(0.8, 2.0));
      const auto rho0 = dynamics::from_pure(n, random_pure(gen, 1L << n));
      const double t = gen.uniform(0.2, 0.8);
      const DephasingMatrix a{base, 1.0};
      const auto ev = dynamics::evolve_markovian_with_xi_derivative(rho0, a, 1.0, t);
      const double sld = qfi::qfi_sld(ev.rho, ev.drho_dxi).value;

      const double dxi = 1e-4;
      const DephasingMatrix am{base * (1.0 - dxi), 1.0};
      const DephasingMatrix ap{base * (1.0 + dxi), 1.0};
      const auto rm = dynamics::evolve_markovian(rho0, am, t);
      const auto rp = dynamics::evolve_markovian(rho0, ap, t);
      const double fid = mc::fidelity_qfi(rm.matrix, rp.matrix, dxi).value;
      worst = std::max(worst, std::abs(sld - fid) / std::max(sld, 1e-9));
    }
    push(out, "sld-vs-fidelity", worst <= 1e-4,
         "20 random dephased states, max_rel_diff=" + num(worst) + " tol=0.0001");
  }

  // Unit QFI of a pure phase family through both mixed-state routes.
  {
    const Eigen::Vector2cd plus(1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0));
    const Eigen::MatrixXcd rho = plus * plus.adjoint();
    Eigen::MatrixXcd hz(2, 2);
    hz << 0.5, 0.0, 0.0, -0.5;
    const std::complex<double> i1(0.0, 1.0);
    const Eigen::MatrixXcd drho = -i1 * (hz * rho - rho * hz);
    const double sld = qfi::qfi_sld(rho, drho).value;

    const double dphi = 1e-4;
    auto rot = [&](double phi) {
      Eigen::Vector2cd v(std::exp(-i1 * (0.5 * phi)) / std::sqrt(2.0),
                         std::exp(i1 * (0.5 * phi)) / std::sqrt(2.0));
      return Eigen::MatrixXcd(v * v.adjoint());
    };
    const double fid = mc::fidelity_qfi(rot(-dphi), rot(dphi), dphi).value;
    const bool ok = std::abs(sld - 1.0) <= 1e-12 && std::abs(fid - 1.0) <= 1e-6;
    push(out, "pure-phase-unit-qfi", ok,
         "sld=" + num(sld) + " fidelity=" + num(fid));
  }

  // Hand-checked short-time rates on the 3-sensor power-law matrix.
  {
    noise::PowerLawSpatialModel model;
    model.n_sensors = 3;
    model.alpha = 1.0;
    const DephasingMatrix a = noise::build_dephasing_matrix(model, 1.0);
    const double f_prod =
        qfi::fq_short_time(dynamics::plus_product_amplitudes(3), a, 1.0);
    const double f_ghz = qfi::fq_short_time(dynamics::ghz_amplitudes(3), a, 1.0);
    Eigen::VectorXcd basis = Eigen::VectorXcd::Zero(8);
    basis(0) = 1.0;
    const double f_basis = qfi::fq_short_time(basis, a, 1.0);
    const double ratio = qfi::advantage_ratio(a, 1.0);
    const bool ok = std::abs(f_prod - 0.75) <= 1e-12 &&
                    std::abs(f_ghz - 1.375) <= 1e-12 &&
                    std::abs(f_basis) <= 1e-12 &&
                    std::abs(ratio - 11.0 / 6.0) <= 1e-12;
    push(out, "short-time-examples", ok,
         "product=" + num(f_prod) + " ghz=" + num(f_ghz) +
             " ratio=" + num(ratio));
  }

  // No state beats the entangled optimum; no product state beats the
  // separable one.
  {
    bool ok = true;
    double worst_margin = 0.0;
    for (int c = 0; c < 100; ++c) {
      rng::SplitMix64 gen(rng::substream_seed(seed, 900 + c));
      const int n = 2 + c % 7;
      noise::PowerLawSpatialModel model;
      model.n_sensors = n;
      model.alpha = gen.uniform(0.3, 2.0);
      model.xi = gen.uniform(0.5, 2.0);
      const DephasingMatrix a = noise::build_dephasing_matrix(model, 1.0);
      const double ent = qfi::optimal_entangled_rate(a, model.xi);
      const double sep = qfi::optimal_separable_rate(a, model.xi);
      const double f_any =
          qfi::fq_short_time(random_pure(gen, 1L << n), a, model.xi);
      const double f_prod =
          qfi::fq_short_time(random_product(gen, n), a, model.xi);
      if (f_any > ent * (1.0 + 1e-10) + 1e-12) ok = false;
      if (f_prod > sep * (1.0 + 1e-10) + 1e-12) ok = false;
      worst_margin = std::max(worst_margin, f_any / ent);
    }
    push(out, "state-optimality-bounds", ok,
         "100 random probes, max f/f_ent=" + num(worst_margin));
  }

  // Multiparameter matrix: single-parameter reduction, block two-parameter
  // case against an explicit summation, and the Schur-complement penalty.
  {
    noise::PowerLawSpatialModel model;
    model.n_sensors = 3;
    model.alpha = 1.0;
    const DephasingMatrix a = noise::build_dephasing_matrix(model, 1.0);
    const Eigen::VectorXcd ghz = dynamics::ghz_amplitudes(3);
    const Eigen::MatrixXd prod11 = a.entries / 4.0;
    const auto f1 = qfi::fq_multiparam_matrix(ghz, 1, {prod11}, 1.0);
    const double direct = qfi::fq_short_time(ghz, a, 1.0);
    const double err_reduce = std::abs(f1.matrix(0, 0) - direct);

    // Two independent sublattices of a 4-sensor register.
    rng::SplitMix64 gen(rng::substream_seed(seed, 1100));
    noise::PowerLawSpatialModel m2;
    m2.n_sensors = 2;
    const Eigen::MatrixXd block_l = noise::build_dephasing_matrix(m2, 1.0).entries;
    m2.alpha = 0.7;
    const Eigen::MatrixXd block_r = noise::build_dephasing_matrix(m2, 1.0).entries;
    Eigen::MatrixXd p11 = Eigen::MatrixXd::Zero(4, 4);
    Eigen::MatrixXd p22 = Eigen::MatrixXd::Zero(4, 4);
    p11.topLeftCorner(2, 2) = block_l / 4.0;
    p22.bottomRightCorner(2, 2) = block_r / 4.0;
    const Eigen::MatrixXd p12 = Eigen::MatrixXd::Zero(4, 4);
    const Eigen::VectorXcd psi = random_pure(gen, 16);
    const auto f2 = qfi::fq_multiparam_matrix(psi, 2, {p11, p12, p12, p22}, 1.3);
    const Eigen::MatrixXd cov = qfi::generator_covariance(psi);
    double direct11 = 0.0, direct22 = 0.0;
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) {
        direct11 += 2.0 * 1.3 * p11(i, j) * cov(i, j);
        direct22 += 2.0 * 1.3 * p22(i, j) * cov(i, j);
      }
    }
    const double err_block = std::max(
        {std::abs(f2.matrix(0, 0) - direct11), std::abs(f2.matrix(1, 1) - direct22),
         std::abs(f2.matrix(0, 1)), std::abs(f2.matrix(1, 0))});

    // Nuisance penalty: the bound on parameter 1 alone never improves when a
    // second correlated parameter is unknown.
    Eigen::MatrixXd pc = Eigen::MatrixXd::Zero(4, 4);
    pc.topRightCorner(2, 2) = Eigen::MatrixXd::Constant(2, 2, 0.1);
    pc.bottomLeftCorner(2, 2) = Eigen::MatrixXd::Constant(2, 2, 0.1);
    const auto fc = qfi::fq_multiparam_matrix(psi, 2, {p11, pc, pc, p22}, 1.3);
    Eigen::VectorXd e1(2);
    e1 << 1.0, 0.0;
    bool warn = false;
    const double bound = qfi::linear_function_bound(fc, e1, &warn);
    const bool schur_ok = bound >= (1.0 / fc.matrix(0, 0)) * (1.0 - 1e-12);

    // Duplicated parameters make the matrix singular; the pseudo-inverse
    // bound must flag it.
    const auto fs = qfi::fq_multiparam_matrix(ghz, 2,
                                              {prod11, prod11, prod11, prod11}, 1.0);
    bool warn_singular = false;
    qfi::linear_function_bound(fs, e1, &warn_singular);

    const bool ok = err_reduce <= 1e-12 && err_block <= 1e-10 && schur_ok &&
                    !warn && warn_singular;
    push(out, "multiparam-consistency", ok,
         "reduce_err=" + num(err_reduce) + " block_err=" + num(err_block) +
             " schur_ok=" + (schur_ok ? std::string("1") : std::string("0")));
  }

  return out;
}

// ---- filter suite -----------------------------------------------------------

std::vector<CheckResult> suite_filter(std::uint64_t seed, int /*threads*/) {
  std::vector<CheckResult> out;
  constexpr double kPi = 3.14159265358979323846264338327950288;

  // Frozen golden table.
  {
    double worst = 0.0;
    for (const auto& row : filter::golden_coefficients()) {
      const double c = filter::coefficient_closed_form(row.sequence, row.p).value;
      worst = std::max(worst, std::abs(c - row.value) / std::abs(row.value));
    }
    push(out, "golden-closed", worst <= 1e-9,
         std::to_string(filter::golden_coefficients().size()) +
             " rows, max_rel_err=" + num(worst) + " tol=1e-09");
  }

  // Analytically known coefficients.
  {
    const double c_fid0 = filter::coefficient_closed_form(PulseSequence::fid(), 0.0).value;
    const double c_hahn1 =
        filter::coefficient_closed_form(PulseSequence::hahn(), 1.0).value;
    const double c_hahn2 =
        filter::coefficient_closed_form(PulseSequence::hahn(), 2.0).value;
    const double c_cpmg4_2 =
        filter::coefficient_closed_form(PulseSequence::cpmg(4), 2.0).value;
    const double e0 = std::abs(c_fid0 - 0.5);
    const double e1 = std::abs(c_hahn1 - std::log(2.0) / (2.0 * kPi));
    const double e2 = std::abs(c_hahn2 - 1.0 / 24.0);
    const double e3 = std::abs(c_cpmg4_2 - 1.0 / 384.0);
    const double worst = std::max({e0, e1, e2, e3});
    push(out, "pinned-constants", worst <= 1e-12,
         "fid(0),hahn(1),hahn(2),cpmg4(2): max_abs_err=" + num(worst));
  }

  // Closed form against the spectral quadrature at operational cutoff.
  {
    double worst = 0.0;
    for (const auto& seq : {PulseSequence::hahn(), PulseSequence::cpmg(2)}) {
      for (double p : {0.5, 1.0, 2.0}) {
        const filter::SpectralModel spec{p, 1.0, 1e-6,
                                         filter::CutoffShape::FlattenBelow};
        const double closed = filter::zeta_closed_form(spec, seq, 1.0);
        const double quad = filter::zeta_quadrature(spec, seq, 1.0, 1e-6, 1e-9);
        worst = std::max(worst, std::abs(closed - quad) / closed);
      }
    }
    push(out, "quad-vs-closed-operational", worst <= 1e-3,
         "hahn+cpmg2, p in {0.5,1,2}, cutoff 1e-6: max_rel_err=" + num(worst) +
             " tol=0.001");
  }

  // Tight-cutoff quadrature pins the closed form to 1e-9.
  {
    double worst = 0.0;
    for (double p : {1.0, 2.0}) {
      const filter::SpectralModel spec{p, 1.0, 1e-12,
                                       filter::CutoffShape::FlattenBelow};
      const double closed = filter::zeta_closed_form(spec, PulseSequence::hahn(), 1.0);
      const double quad =
          filter::zeta_quadrature(spec, PulseSequence::hahn(), 1.0, 1e-9, 1e-12);
      worst = std::max(worst, std::abs(closed - quad) / closed);
    }
    push(out, "quad-vs-closed-tight", worst <= 1e-9,
         "hahn, p in {1,2}, cutoff 1e-12: max_rel_err=" + num(worst) + " tol=1e-09");
  }

  // Filter norm sum rule: integral |F|^2 d omega / 2 pi = t_s.
  {
    double worst = 0.0;
    rng::SplitMix64 gen(rng::substream_seed(seed, 1300));
    std::vector<PulseSequence> seqs{PulseSequence::fid(), PulseSequence::hahn()};
    for (int c = 0; c < 10; ++c) {
      seqs.push_back(random_spaced_sequence(gen, 1 + c % 6, 0.02));
    }
    const double t_s = 0.7;
    for (const auto& seq : seqs) {
      const double v = filter::filter_norm_quadrature(seq, t_s);
      worst = std::max(worst, std::abs(v - t_s) / t_s);
    }
    push(out, "sum-rule", worst <= 1e-6,
         "12 sequences, max_rel_err=" + num(worst) + " tol=1e-06");
  }

  // The closed form crosses its removable points smoothly, and the series
  // branch matches direct evaluation at the switch radius.
  {
    const PulseSequence uneven{{0.2, 0.45, 0.75}};
    double worst_curv = 0.0;
    double worst_seam = 0.0;
    for (const auto& seq : {PulseSequence::hahn(), PulseSequence::cpmg(2), uneven}) {
      for (double p0 : {1.0, 2.0}) {
        const double d = 1e-4;
        const double cm = filter::coefficient_closed_form(seq, p0 - d).value;
        const double c0 = filter::coefficient_closed_form(seq, p0).value;
        const double cp = filter::coefficient_closed_form(seq, p0 + d).value;
        worst_curv = std::max(worst_curv, std::abs(cp + cm - 2.0 * c0) / c0);
      }
      for (double pp : {1.0 - 1e-4, 1.0 + 1e-4}) {
        const double direct = filter::coefficient_closed_form(seq, pp, 1e-9).value;
        const double series = filter::coefficient_closed_form(seq, pp, 2e-4).value;
        worst_seam = std::max(worst_seam, std::abs(direct - series) / direct);
      }
    }
    push(out, "continuity-at-removable-points",
         worst_curv <= 1e-6 && worst_seam <= 1e-6,
         "second_diff=" + num(worst_curv) + " seam=" + num(worst_seam) +
             " tol=1e-06");
  }

  // Shot-time optimizer: the reported optimum matches a dense scan of the
  // per-time information, and y0 stays inside (0, 1).
  {
    bool ok = true;
    double worst = 0.0;
    for (double p : {0.1, 0.5, 1.0, 2.0}) {
      const PulseSequence seq = PulseSequence::hahn();
      const auto c = filter::coefficient_closed_form(seq, p);
      const filter::SpectralModel spec{p, 0.8, 0.0, filter::CutoffShape::FlattenBelow};
      const auto opt = filter::optimize_shot_time(spec, c);
      if (!(opt.y0 > 0.0 && opt.y0 < 1.0)) ok = false;
      double scan = 0.0;
      for (int k = 0; k <= 4000; ++k) {
        const double t = opt.t_opt * std::pow(10.0, -1.0 + 2.0 * k / 4000.0);
        scan = std::max(scan, filter::single_qubit_qfi(spec, seq, t) / t);
      }
      const double rel = std::abs(scan - opt.max_rate) / opt.max_rate;
      worst = std::max(worst, rel);
      if (scan > opt.max_rate * (1.0 + 1e-9)) ok = false;
      if (rel > 1e-4) ok = false;
    }
    // p = 0: rate C / (2 xi) at vanishing shot time.
    const auto c0 = filter::coefficient_closed_form(PulseSequence::fid(), 0.0);
    const filter::SpectralModel s0{0.0, 2.0, 0.0, filter::CutoffShape::FlattenBelow};
    const auto opt0 = filter::optimize_shot_time(s0, c0);
    if (!(opt0.t_opt == 0.0 && std::abs(opt0.max_rate - 0.125) <= 1e-15)) ok = false;
    push(out, "shot-time-optimizer", ok,
         "scan_vs_opt max_rel_gap=" + num(worst) + " tol=0.0001");
  }

  // Window handling: poles and unsupported exponents.
  {
    bool ok = true;
    auto expect_pole = [&](const PulseSequence& s, double p) {
      try {
        filter::coefficient_closed_form(s, p);
        ok = false;
      } catch (const PoleError&) {
      } catch (...) {
        ok = false;
      }
    };
    auto expect_window = [&](const PulseSequence& s, double p) {
      try {
        filter::coefficient_closed_form(s, p);
        ok = false;
      } catch (const UnsupportedExponent&) {
      } catch (...) {
        ok = false;
      }
    };
    expect_pole(PulseSequence::fid(), 1.0);
    expect_pole(PulseSequence{{0.3}}, 1.0);  // pulsed but not DC balanced
    expect_window(PulseSequence::fid(), 1.5);
    expect_window(PulseSequence::hahn(), 3.0);
    expect_window(PulseSequence::hahn(), -1.0);
    // Hard cutoff shape agrees with the closed form once the cutoff is tiny.
    const filter::SpectralModel hard{0.5, 1.0, 1e-8, filter::CutoffShape::HardZero};
    const double closed = filter::zeta_closed_form(hard, PulseSequence::hahn(), 1.0);
    const double quad = filter::zeta_quadrature(hard, PulseSequence::hahn(), 1.0);
    if (std::abs(closed - quad) / closed > 1e-3) ok = false;
    bool warned = false;
    filter::zeta_closed_form(filter::SpectralModel{0.5, 1.0, 0.5,
                                                   filter::CutoffShape::FlattenBelow},
                             PulseSequence::hahn(), 1.0, &warned);
    if (!warned) ok = false;
    push(out, "exponent-windows", ok, "pole/window errors and cutoff warning");
  }

  return out;
}

// ---- mc-white suite ---------------------------------------------------------

std::vector<CheckResult> suite_mc_white(std::uint64_t seed, int threads) {
  std::vector<CheckResult> out;

  // Increment covariance against gamma dt A before any physics comparison.
  {
    noise::PowerLawSpatialModel model;
    model.n_sensors = 3;
    model.alpha = 1.0;
    model.xi = 0.7;
    const DephasingMatrix a = noise::build_dephasing_matrix(model, 1.3);
    const auto chk = mc::white_increment_covariance(a, 1e-3, 200000, seed + 17);
    push(out, "increment-covariance", chk.max_sigma <= 5.0,
         "200000 samples, worst_entry=" + num(chk.max_sigma) + " sigma, tol=5");
  }

  // Single qubit: sampled coherence against exp(-gamma t / 2) (a_d = 2).
  {
    DephasingMatrix a{Eigen::MatrixXd::Constant(1, 1, 2.0), 1.0};
    const auto ens = mc::sample_white_correlated(a, 1.0, 4e-3, 100000, seed + 21,
                                                 {{0, 1}}, threads);
    const auto& est = ens.estimates[0];
    const double target = std::exp(-0.5);
    const double dev = std::abs(est.mean.real() - target);
    const bool ok = dev <= 3.0 * est.stderr_re &&
                    std::abs(est.mean.imag()) <= 3.0 * est.stderr_im + 1e-12;
    push(out, "white-n1", ok,
         "|mean-exp(-1/2)|=" + num(dev) + " 3sigma=" + num(3.0 * est.stderr_re));
  }

  // Three sensors, GHZ extreme coherence: rate (sum A) / 4.
  {
    noise::PowerLawSpatialModel model;
    model.n_sensors = 3;
    model.alpha = 1.0;
    const DephasingMatrix a = noise::build_dephasing_matrix(model, 1.0);
    const double t = 0.3;
    const double rate = a.entries.sum() / 4.0;
    const double dt = 0.009 / noise::max_eigenvalue(a.entries);
    const auto ens = mc::sample_white_correlated(a, t, dt, 100000, seed + 23,
                                                 {{0, 7}}, threads);
    const auto& est = ens.estimates[0];
    const double target = std::exp(-rate * t);
    const double dev = std::abs(est.mean.real() - target);
    const bool ok = dev <= 3.0 * est.stderr_re &&
                    std::abs(est.mean.imag()) <= 3.0 * est.stderr_im + 1e-12;
    push(out, "white-ghz3", ok,
         "|mean-exp(-11t/4)|=" + num(dev) + " 3sigma=" + num(3.0 * est.stderr_re));
  }

  // Uncorrelated sites factorize: the pair coherence is the product of the
  // single-site decays.
  {
    DephasingMatrix a{2.0 * Eigen::MatrixXd::Identity(2, 2), 1.0};
    const auto ens = mc::sample_white_correlated(a, 0.8, 4e-3, 60000, seed + 29,
                                                 {{0, 3}, {0, 1}, {0, 2}}, threads);
    bool ok = true;
    double worst = 0.0;
    const double single = std::exp(-0.5 * 0.8);
    const double targets[3] = {single * single, single, single};
    for (int k = 0; k < 3; ++k) {
      const auto& est = ens.estimates[static_cast<std::size_t>(k)];
      const double dev = std::abs(est.mean.real() - targets[k]);
      if (dev > 3.0 * est.stderr_re) ok = false;
      worst = std::max(worst, dev / est.stderr_re);
    }
    push(out, "white-independent-sites", ok,
         "worst deviation " + num(worst) + " sigma of 3");
  }

  // Same seed, different thread counts: bit-identical estimates.
  {
    DephasingMatrix a{Eigen::MatrixXd::Constant(1, 1, 2.0), 1.0};
    const auto e1 = mc::sample_white_correlated(a, 0.5, 4e-3, 20000, seed + 31,
                                                {{0, 1}}, 1);
    const auto e4 = mc::sample_white_correlated(a, 0.5, 4e-3, 20000, seed + 31,
                                                {{0, 1}}, 4);
    const bool ok = std::memcmp(&e1.estimates[0].mean, &e4.estimates[0].mean,
                                sizeof(std::complex<double>)) == 0 &&
                    e1.estimates[0].stderr_re == e4.estimates[0].stderr_re;
    push(out, "thread-count-invariance", ok, "threads 1 vs 4 bitwise equal");
  }

  return out;
}

// ---- mc-colored suite -------------------------------------------------------

std::vector<CheckResult> suite_mc_colored(std::uint64_t seed, int threads) {
  std::vector<CheckResult> out;

  // Discretized synthesis variance against the quadrature zeta: validates the
  // grid and the mode responses with no sampling involved.
  {
    const PulseSequence hahn = PulseSequence::hahn();
    const filter::SpectralModel spec{1.0, 1.0, 1e-6, filter::CutoffShape::FlattenBelow};
    const auto grid = mc::FrequencyGrid::standard(spec.omega_cut, 1.0);
    const auto w = mc::mode_responses(hahn, 1.0, grid);
    double discrete_var = 0.0;
    for (std::size_t m = 0; m < grid.omega.size(); ++m) {
      const double s = spec.xi * std::pow(std::max(grid.omega[m], spec.omega_cut),
                                          -spec.p);
      discrete_var += (2.0 * s * grid.domega[m] / 3.14159265358979323846) *
                      std::norm(w[m]) / 2.0;
    }
    const double zeta = filter::zeta_quadrature(spec, hahn, 1.0);
    const double rel = std::abs(discrete_var - 2.0 * zeta) / (2.0 * zeta);
    push(out, "grid-variance-consistency", rel <= 0.02,
         "discrete vs quadrature 2*zeta: rel_err=" + num(rel) + " tol=0.02");
  }

  // Hahn against a 1/omega spectrum tuned to zeta = 0.5.
  {
    const PulseSequence hahn = PulseSequence::hahn();
    const double c = filter::coefficient_closed_form(hahn, 1.0).value;
    const filter::SpectralModel spec{1.0, 0.5 / c, 1e-6,
                                     filter::CutoffShape::FlattenBelow};
    const auto grid = mc::FrequencyGrid::standard(spec.omega_cut, 1.0);
    const auto ens =
        mc::sample_colored_single(spec, hahn, 1.0, grid, 10000, seed + 41, threads);
    const auto& est = ens.estimates[0];
    const double target = std::exp(-0.5);
    const double dev = std::abs(est.mean.real() - target);
    push(out, "hahn-p1-coherence", dev <= 3.0 * est.stderr_re,
         "|mean-exp(-1/2)|=" + num(dev) + " 3sigma=" + num(3.0 * est.stderr_re));
  }

  // Stretched-exponential decay: slope of log(-log coherence) against log t_s
  // recovers 1 + p.
  {
    bool ok = true;
    std::string detail;
    for (double p : {0.5, 1.0}) {
      const PulseSequence hahn = PulseSequence::hahn();
      const double c = filter::coefficient_closed_form(hahn, p).value;
      const double xi = 0.35 / c;  // zeta(t_s = 1) = 0.35
      double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
      const int n_pts = 6;
      for (int k = 0; k < n_pts; ++k) {
        const double t_s = 0.6 * std::pow(1.5 / 0.6, static_cast<double>(k) / (n_pts - 1));
        const filter::SpectralModel spec{p, xi, 1e-6, filter::CutoffShape::FlattenBelow};
        const auto grid = mc::FrequencyGrid::standard(spec.omega_cut, t_s);
        const auto ens = mc::sample_colored_single(spec, hahn, t_s, grid, 30000,
                                                   seed + 47 + k, threads);
        const double x = std::log(t_s);
        const double y = std::log(-std::log(ens.estimates[0].mean.real()));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
      }
      const double slope =
          (n_pts * sxy - sx * sy) / (n_pts * sxx - sx * sx);
      if (std::abs(slope - (1.0 + p)) > 0.05) ok = false;
      detail += "p=" + num(p) + ":slope=" + num(slope) + " ";
    }
    push(out, "stretched-exponent-fit", ok, detail + "tol=0.05");
  }

  // p = 0 synthesis reproduces the white-noise decay exp(-xi t / 2).
  {
    const filter::SpectralModel spec{0.0, 0.8, 1e-6, filter::CutoffShape::FlattenBelow};
    const auto grid = mc::FrequencyGrid::standard(spec.omega_cut, 1.0);
    const auto ens = mc::sample_colored_single(spec, PulseSequence::fid(), 1.0,
                                               grid, 10000, seed + 53, threads);
    const auto& est = ens.estimates[0];
    const double target = std::exp(-0.4);
    const double dev = std::abs(est.mean.real() - target);
    push(out, "p0-white-limit", dev <= 3.0 * est.stderr_re,
         "|mean-exp(-0.4)|=" + num(dev) + " 3sigma=" + num(3.0 * est.stderr_re));
  }

  // Spatially correlated synthesis against the effective-time closed form.
  {
    noise::PowerLawSpatialModel model;
    model.n_sensors = 2;
    model.alpha = 1.0;
    const DephasingMatrix a1 = noise::build_dephasing_matrix(model, 1.0);
    const PulseSequence hahn = PulseSequence::hahn();
    const filter::SpectralModel spec{0.5, 0.6, 1e-6, filter::CutoffShape::FlattenBelow};
    const auto grid = mc::FrequencyGrid::standard(spec.omega_cut, 1.0);
    const auto ens = mc::sample_colored_spatial(a1, spec, hahn, 1.0, grid, 6000,
                                                seed + 59, {{0, 3}, {0, 1}}, threads);
    const auto plus = dynamics::plus_product_state(2);
    const auto evolved = dynamics::evolve_spatiotemporal(plus, a1, spec, hahn, 1.0);
    bool ok = true;
    double worst = 0.0;
    for (std::size_t k = 0; k < ens.estimates.size(); ++k) {
      const auto& est = ens.estimates[k];
      const double target =
          (evolved.matrix(est.row, est.col) / plus.matrix(est.row, est.col)).real();
      const double dev = std::abs(est.mean.real() - target);
      if (dev > 3.0 * est.stderr_re) ok = false;
      worst = std::max(worst, dev / est.stderr_re);
    }
    push(out, "spatial-vs-closed", ok,
         "worst deviation " + num(worst) + " sigma of 3");
  }

  // Thread-count invariance for the colored path.
  {
    const filter::SpectralModel spec{0.5, 1.0, 1e-6, filter::CutoffShape::FlattenBelow};
    const auto grid = mc::FrequencyGrid::standard(spec.omega_cut, 1.0);
    const auto e1 = mc::sample_colored_single(spec, PulseSequence::hahn(), 1.0,
                                              grid, 2000, seed + 61, 1);
    const auto e3 = mc::sample_colored_single(spec, PulseSequence::hahn(), 1.0,
                                              grid, 2000, seed + 61, 3);
    const bool ok = e1.estimates[0].mean == e3.estimates[0].mean &&
                    e1.estimates[0].stderr_re == e3.estimates[0].stderr_re;
    push(out, "thread-count-invariance", ok, "threads 1 vs 3 bitwise equal");
  }

  return out;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"lindblad", "mc-white", "mc-colored",
                                              "qfi-oracle", "filter"};
  return names;
}

std::vector<CheckResult> run_suite(const std::string& suite, std::uint64_t seed,
                                   int threads) {
  if (suite == "lindblad") return suite_lindblad(seed, threads);
  if (suite == "mc-white") return suite_mc_white(seed, threads);
  if (suite == "mc-colored") return suite_mc_colored(seed, threads);
  if (suite == "qfi-oracle") return suite_qfi_oracle(seed, threads);
  if (suite == "filter") return suite_filter(seed, threads);
  throw std::invalid_argument("unknown verification suite: " + suite);
}

}  // namespace corrsense::verify
