// test_qfi.cpp - short-time information rates, SLD evaluation, multiparameter bounds.
#include <doctest.h>

#include <cmath>
#include <random>

#include "corrsense/dynamics.hpp"
#include "corrsense/mc.hpp"
#include "corrsense/qfi.hpp"
#include "test_support.hpp"

using namespace corrsense;
using namespace corrsense::dynamics;
using namespace corrsense::qfi;
using test_support::rel_close;

namespace {

Eigen::VectorXcd random_state(std::mt19937& gen, int n_qubits) {
  std::normal_distribution<double> nd(0.0, 1.0);
  Eigen::VectorXcd psi(1L << n_qubits);
  for (long i = 0; i < psi.size(); ++i) psi(i) = std::complex<double>(nd(gen), nd(gen));
  return psi / psi.norm();
}

}  // namespace

TEST_SUITE("qfi") {

TEST_CASE("short time rates for three sensors") {
  const auto a = noise::build_dephasing_matrix({3, 1.0, 1.0, 2.0}, 1.0);
  CHECK(rel_close(fq_short_time(ghz_amplitudes(3), a, 1.0), 1.375, 1e-12));
  CHECK(rel_close(fq_short_time(plus_product_amplitudes(3), a, 1.0), 0.75, 1e-12));
  Eigen::VectorXcd basis = Eigen::VectorXcd::Zero(8);
  basis(0) = 1.0;
  CHECK(fq_short_time(basis, a, 1.0) == 0.0);
  CHECK(rel_close(optimal_separable_rate(a, 1.0), 0.75, 1e-12));
  CHECK(rel_close(optimal_entangled_rate(a, 1.0), 1.375, 1e-12));
  CHECK(rel_close(advantage_ratio(a, 1.0), 11.0 / 6.0, 1e-12));
}

TEST_CASE("generator covariance structure") {
  const Eigen::MatrixXd plus_cov = generator_covariance(plus_product_amplitudes(3));
  CHECK((plus_cov - 0.25 * Eigen::MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff() <=
        1e-15);
  const Eigen::MatrixXd ghz_cov = generator_covariance(ghz_amplitudes(3));
  CHECK((ghz_cov - 0.25 * Eigen::MatrixXd::Ones(3, 3)).cwiseAbs().maxCoeff() <= 1e-15);
  Eigen::VectorXcd basis = Eigen::VectorXcd::Zero(4);
  basis(2) = 1.0;
  CHECK(generator_covariance(basis).cwiseAbs().maxCoeff() <= 1e-15);
}

TEST_CASE("sld matches the bloch vector closed form") {
  // Single dephased qubit: rho = [[1/2, c], [c, 1/2]] with c(xi) = e^(-a xi)/2
  // has information 4 c'(xi)^2 / (1 - 4 c(xi)^2).
  const double gamma = 1.1, t = 0.7, xi = 1.3;
  const auto a = noise::build_dephasing_matrix({1, 1.0, xi, 2.0}, gamma);
  const auto ev = evolve_markovian_with_xi_derivative(plus_product_state(1), a, xi, t);
  const double slope = gamma * t / 2.0;  // exponent is gamma t q with q = xi / 2... / xi
  const double c = 0.5 * std::exp(-slope * xi);
  const double want = 4.0 * slope * slope * c * c / (1.0 - 4.0 * c * c);
  CHECK(rel_close(qfi_sld(ev.rho, ev.drho_dxi).value, want, 1e-10));
}

TEST_CASE("fidelity oracle agrees on a dephased ghz pair") {
  const double xi = 1.0, dxi = 1e-4 * xi;
  const auto a = noise::build_dephasing_matrix({2, 1.0, xi, 2.0}, 1.0);
  const auto up = noise::build_dephasing_matrix({2, 1.0, xi + dxi, 2.0}, 1.0);
  const auto dn = noise::build_dephasing_matrix({2, 1.0, xi - dxi, 2.0}, 1.0);
  const auto psi = ghz_state(2);
  const auto ev = evolve_markovian_with_xi_derivative(psi, a, xi, 0.5);
  const double sld = qfi_sld(ev.rho, ev.drho_dxi).value;
  const double fid = mc::fidelity_qfi(evolve_markovian(psi, dn, 0.5).matrix,
                                      evolve_markovian(psi, up, 0.5).matrix, dxi)
                         .value;
  CHECK(rel_close(sld, fid, 1e-4));
}

TEST_CASE("entangled optimum requires nonnegative couplings") {
  noise::DephasingMatrix mixed_sign;
  mixed_sign.entries = Eigen::MatrixXd(2, 2);
  mixed_sign.entries << 2.0, -1.0, -1.0, 2.0;  // PSD but not entrywise nonnegative
  mixed_sign.gamma = 1.0;
  CHECK_THROWS_AS(optimal_entangled_rate(mixed_sign, 1.0), NegativeEntries);
  CHECK_THROWS_AS(advantage_ratio(mixed_sign, 1.0), NegativeEntries);
  CHECK(optimal_separable_rate(mixed_sign, 1.0) == 0.5);  // diagonal only
}

TEST_CASE("random states never beat the entangled optimum") {
  const auto a = noise::build_dephasing_matrix({3, 0.7, 1.2, 2.0}, 1.0);
  const double best = optimal_entangled_rate(a, 1.2);
  std::mt19937 gen(42);
  for (int c = 0; c < 20; ++c) {
    const double rate = fq_short_time(random_state(gen, 3), a, 1.2);
    CHECK(rate <= best * (1.0 + 1e-12));
    CHECK(rate >= 0.0);
  }
}

TEST_CASE("multiparameter matrix reduces to the single parameter rate") {
  const auto a = noise::build_dephasing_matrix({2, 0.5, 1.0, 2.0}, 1.3);
  const Eigen::VectorXcd psi = ghz_amplitudes(2);
  const auto f =
      fq_multiparam_matrix(psi, 1, {noise::dxi_factor_product(a, 1.0)}, 1.3);
  CHECK(f.matrix.rows() == 1);
  CHECK(rel_close(f.matrix(0, 0), fq_short_time(psi, a, 1.0), 1e-13));
}

TEST_CASE("linear function bound inverts the information matrix") {
  const auto a = noise::build_dephasing_matrix({2, 0.5, 1.0, 2.0}, 1.0);
  const Eigen::VectorXcd psi = ghz_amplitudes(2);
  const auto f =
      fq_multiparam_matrix(psi, 1, {noise::dxi_factor_product(a, 1.0)}, 1.0);
  Eigen::VectorXd e1 = Eigen::VectorXd::Ones(1);
  bool singular = false;
  CHECK(rel_close(linear_function_bound(f, e1, &singular), 1.0 / f.matrix(0, 0), 1e-12));
  CHECK_FALSE(singular);
}

TEST_CASE("duplicated parameters are flagged singular") {
  const auto a = noise::build_dephasing_matrix({2, 0.5, 1.0, 2.0}, 1.0);
  const Eigen::MatrixXd prod = noise::dxi_factor_product(a, 1.0);
  const Eigen::VectorXcd psi = ghz_amplitudes(2);
  // Two declared parameters with identical couplings: F is rank one.
  const auto f = fq_multiparam_matrix(psi, 2, {prod, prod, prod, prod}, 1.0);
  Eigen::VectorXd dir(2);
  dir << 1.0, 1.0;
  bool singular = false;
  const double bound = linear_function_bound(f, dir, &singular);
  CHECK(singular);
  CHECK(std::isfinite(bound));
}

}  // TEST_SUITE
