// qfi.hpp - quantum Fisher information about the noise strength: spectral SLD
// evaluation, short-time rates, and optimal-state rates with their ratio.
#pragma once

#include <Eigen/Dense>
#include <vector>

#include "corrsense/noise_model.hpp"

namespace corrsense::qfi {

enum class QfiMethod { SLD, FidelityFD, ShortTimeRate };

struct QfiResult {
  double value = 0.0;
  QfiMethod method = QfiMethod::SLD;
};

// QFI from the spectral SLD formula 2 sum_{kl} |<k|d rho|l>|^2 / (lambda_k +
// lambda_l); pairs with lambda_k + lambda_l <= 1e-12 * lambda_max are dropped.
QfiResult qfi_sld(const Eigen::MatrixXcd& rho, const Eigen::MatrixXcd& drho);

// Short-time QFI rate lim_{t->0} F_Q(t)/t for a pure probe state:
// 2 gamma sum_ab (A/(4 xi))_ab Cov_psi(h_a, h_b).
double fq_short_time(const Eigen::VectorXcd& psi, const noise::DephasingMatrix& a,
                     double xi);

// Best short-time rate over product states: (gamma / 8 xi) sum_j A_jj,
// attained by |+>^N.
double optimal_separable_rate(const noise::DephasingMatrix& a, double xi);

// Best short-time rate over all states: (gamma / 8 xi) sum_jl A_jl, attained
// by the GHZ state when every entry is nonnegative.  Throws NegativeEntries
// otherwise.
double optimal_entangled_rate(const noise::DephasingMatrix& a, double xi);

// Entangled over separable optimum; >= 1 for nonnegative matrices.
double advantage_ratio(const noise::DephasingMatrix& a, double xi);

// Fisher information matrix for several noise parameters.  partial_g_products
// lists, row-major over parameter pairs (l, j), the matrices
// [d_l g][d_j g]^T of a declared parametrization of the factor g.
struct MultiparamFqMatrix {
  Eigen::MatrixXd matrix;
};
MultiparamFqMatrix fq_multiparam_matrix(
    const Eigen::VectorXcd& psi, int n_params,
    const std::vector<Eigen::MatrixXd>& partial_g_products, double gamma);

// Cramer-Rao bound a^T F^-1 a for estimating a . parameters.  Falls back to
// the pseudo-inverse when F is singular and flags it.
double linear_function_bound(const MultiparamFqMatrix& f, const Eigen::VectorXd& a,
                             bool* singular_warning = nullptr);

// Covariance matrix Cov_psi(h_a, h_b) of the half-Z generators in a pure state.
Eigen::MatrixXd generator_covariance(const Eigen::VectorXcd& psi);

}  // namespace corrsense::qfi
