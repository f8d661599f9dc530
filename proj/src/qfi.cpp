// qfi.cpp
#include "corrsense/qfi.hpp"

#include <cmath>
#include <stdexcept>

#include "corrsense/register_state.hpp"

namespace corrsense::qfi {

namespace {

int qubits_from_dim(long d) {
  long n = 0;
  while ((1L << n) < d) ++n;
  if ((1L << n) != d) {
    throw std::invalid_argument("state dimension must be a power of 2");
  }
  return static_cast<int>(n);
}

void check_state_matrix(const Eigen::MatrixXcd& rho, const char* what) {
  if (rho.rows() != rho.cols()) {
    throw std::invalid_argument(std::string(what) + " must be square");
  }
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-10) {
    throw std::invalid_argument(std::string(what) + " must be Hermitian");
  }
}

}  // namespace

Eigen::MatrixXd generator_covariance(const Eigen::VectorXcd& psi) {
  const long d = psi.size();
  const int n = qubits_from_dim(d);
  if (std::abs(psi.norm() - 1.0) > 1e-10) {
    throw std::invalid_argument("psi must be normalized");
  }
  Eigen::VectorXd mean = Eigen::VectorXd::Zero(n);
  Eigen::MatrixXd second = Eigen::MatrixXd::Zero(n, n);
  Eigen::VectorXd z(n);
  for (long r = 0; r < d; ++r) {
    const double w = std::norm(psi(r));
    if (w == 0.0) continue;
    for (int j = 0; j < n; ++j) z(j) = dynamics::z_value(r, j);
    mean.noalias() += (0.5 * w) * z;
    second.noalias() += (0.25 * w) * (z * z.transpose());
  }
  return second - mean * mean.transpose();
}

QfiResult qfi_sld(const Eigen::MatrixXcd& rho, const Eigen::MatrixXcd& drho) {
  check_state_matrix(rho, "rho");
  check_state_matrix(drho, "drho");
  if (drho.rows() != rho.rows()) {
    throw std::invalid_argument("rho and drho dimensions differ");
  }
  if (std::abs(rho.trace() - std::complex<double>(1.0, 0.0)) > 1e-10) {
    throw std::invalid_argument("rho must have unit trace");
  }
  if (std::abs(drho.trace()) > 1e-10) {
    throw std::invalid_argument("drho must be traceless");
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho);
  const Eigen::VectorXd lam = es.eigenvalues();
  const double lam_max = lam.maxCoeff();
  if (lam.minCoeff() < -1e-10) {
    throw std::invalid_argument("rho must be positive semidefinite");
  }
  const double floor = 1e-12 * lam_max;

  const Eigen::MatrixXcd m = es.eigenvectors().adjoint() * drho * es.eigenvectors();
  const long d = lam.size();
  double total = 0.0;
  for (long k = 0; k < d; ++k) {
    for (long l = 0; l < d; ++l) {
      const double den = lam(k) + lam(l);
      if (den <= floor) continue;
      total += 2.0 * std::norm(m(k, l)) / den;
    }
  }
  return QfiResult{total, QfiMethod::SLD};
}

double fq_short_time(const Eigen::VectorXcd& psi, const noise::DephasingMatrix& a,
                     double xi) {
  if (!(xi > 0.0)) throw std::invalid_argument("xi must be > 0");
  const int n = qubits_from_dim(psi.size());
  if (a.n() != n) {
    throw std::invalid_argument("coefficient matrix size does not match psi");
  }
  const Eigen::MatrixXd cov = generator_covariance(psi);
  // 2 gamma sum_ab (A / 4 xi)_ab cov_ab
  return (a.gamma / (2.0 * xi)) * a.entries.cwiseProduct(cov).sum();
}

double optimal_separable_rate(const noise::DephasingMatrix& a, double xi) {
  if (!(xi > 0.0)) throw std::invalid_argument("xi must be > 0");
  return a.gamma / (8.0 * xi) * a.entries.trace();
}

double optimal_entangled_rate(const noise::DephasingMatrix& a, double xi) {
  if (!(xi > 0.0)) throw std::invalid_argument("xi must be > 0");
  if (a.entries.minCoeff() < 0.0) {
    throw NegativeEntries(
        "entangled optimum formula requires a nonnegative coefficient matrix");
  }
  const double rate = a.gamma / (8.0 * xi) * a.entries.sum();
  // The GHZ state attains this rate; verify on registers small enough to build.
  if (a.n() <= 12) {
    const double ghz = fq_short_time(dynamics::ghz_amplitudes(a.n()), a, xi);
    if (std::abs(ghz - rate) > 1e-12 * std::max(1.0, std::abs(rate))) {
      throw std::logic_error("GHZ state failed to attain the entangled optimum");
    }
  }
  return rate;
}

double advantage_ratio(const noise::DephasingMatrix& a, double xi) {
  return optimal_entangled_rate(a, xi) / optimal_separable_rate(a, xi);
}

MultiparamFqMatrix fq_multiparam_matrix(
    const Eigen::VectorXcd& psi, int n_params,
    const std::vector<Eigen::MatrixXd>& partial_g_products, double gamma) {
  if (n_params < 1) throw std::invalid_argument("n_params must be >= 1");
  if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be > 0");
  if (partial_g_products.size() !=
      static_cast<std::size_t>(n_params) * static_cast<std::size_t>(n_params)) {
    throw std::invalid_argument(
        "need one coupling product matrix per ordered parameter pair");
  }
  const int n = qubits_from_dim(psi.size());
  for (const auto& m : partial_g_products) {
    if (m.rows() != n || m.cols() != n) {
      throw std::invalid_argument("coupling product matrix size does not match psi");
    }
  }

  const Eigen::MatrixXd cov = generator_covariance(psi);
  Eigen::MatrixXd f(n_params, n_params);
  for (int l = 0; l < n_params; ++l) {
    for (int j = 0; j < n_params; ++j) {
      const Eigen::MatrixXd& prod =
          partial_g_products[static_cast<std::size_t>(l) * n_params + j];
      f(l, j) = 2.0 * gamma * prod.cwiseProduct(cov).sum();
    }
  }
  if ((f - f.transpose()).cwiseAbs().maxCoeff() >
      1e-10 * std::max(1.0, f.cwiseAbs().maxCoeff())) {
    throw std::invalid_argument(
        "coupling products produced an asymmetric information matrix");
  }
  f = 0.5 * (f + f.transpose().eval());
  return MultiparamFqMatrix{std::move(f)};
}

double linear_function_bound(const MultiparamFqMatrix& f, const Eigen::VectorXd& a,
                             bool* singular_warning) {
  const Eigen::MatrixXd& m = f.matrix;
  if (m.rows() != m.cols() || a.size() != m.rows()) {
    throw std::invalid_argument("information matrix and direction sizes differ");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  const Eigen::VectorXd lam = es.eigenvalues();
  const double lam_max = std::max(lam.maxCoeff(), 0.0);
  if (lam.minCoeff() < -1e-10 * std::max(1.0, lam_max)) {
    throw std::invalid_argument("information matrix must be PSD");
  }
  const double floor = 1e-12 * std::max(lam_max, 1e-300);
  bool singular = false;
  const Eigen::VectorXd proj = es.eigenvectors().transpose() * a;
  double bound = 0.0;
  for (long k = 0; k < lam.size(); ++k) {
    if (lam(k) <= floor) {
      singular = true;  // pseudo-inverse drops this direction
      continue;
    }
    bound += proj(k) * proj(k) / lam(k);
  }
  if (singular_warning != nullptr) *singular_warning = singular;
  return bound;
}

}  // namespace corrsense::qfi
