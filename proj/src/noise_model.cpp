// noise_model.cpp
#include "corrsense/noise_model.hpp"

#include <cmath>
#include <string>

namespace corrsense::noise {

void PowerLawSpatialModel::validate() const {
  if (n_sensors < 1) throw std::invalid_argument("n_sensors must be >= 1");
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be > 0");
  if (!(xi > 0.0)) throw std::invalid_argument("xi must be > 0");
  if (!(diag_scale > 0.0)) throw std::invalid_argument("diag_scale must be > 0");
}

DephasingMatrix build_dephasing_matrix(const PowerLawSpatialModel& model, double gamma) {
  model.validate();
  if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be > 0");

  const int n = model.n_sensors;
  Eigen::MatrixXd a(n, n);
  for (int j = 0; j < n; ++j) {
    a(j, j) = model.xi * model.diag_scale;
    for (int l = j + 1; l < n; ++l) {
      const double v = model.xi * std::pow(static_cast<double>(l - j), -model.alpha);
      a(j, l) = v;
      a(l, j) = v;
    }
  }

  const double lo = min_eigenvalue(a);
  const double hi = max_eigenvalue(a);
  if (lo < -1e-10 * hi) {
    throw PSDViolation("coefficient matrix is not PSD: min eigenvalue " +
                       std::to_string(lo) + " for n=" + std::to_string(n) +
                       " alpha=" + std::to_string(model.alpha) +
                       " diag_scale=" + std::to_string(model.diag_scale));
  }
  return DephasingMatrix{std::move(a), gamma};
}

FactorMatrix factor_sqrt(const DephasingMatrix& a) {
  const Eigen::MatrixXd& m = a.entries;
  if (m.rows() != m.cols()) throw std::invalid_argument("matrix must be square");
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * (1.0 + m.cwiseAbs().maxCoeff())) {
    throw std::invalid_argument("matrix must be symmetric");
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  Eigen::VectorXd ev = es.eigenvalues();
  const double hi = ev.maxCoeff();
  for (int i = 0; i < ev.size(); ++i) {
    if (ev(i) < 0.0) {
      if (ev(i) < -1e-10 * hi) {
        throw PSDViolation("cannot factor: min eigenvalue " + std::to_string(ev(i)));
      }
      ev(i) = 0.0;
    }
  }
  Eigen::MatrixXd g =
      es.eigenvectors() * ev.cwiseSqrt().asDiagonal() * es.eigenvectors().transpose();

  const double recon = (g.transpose() * g - m).cwiseAbs().maxCoeff();
  if (recon > 1e-10 * (1.0 + m.cwiseAbs().maxCoeff())) {
    throw std::runtime_error("factor reconstruction error " + std::to_string(recon));
  }
  return FactorMatrix{std::move(g)};
}

Eigen::MatrixXd dxi_factor_product(const DephasingMatrix& a, double xi) {
  if (!(xi > 0.0)) throw std::invalid_argument("xi must be > 0");
  return a.entries / (4.0 * xi);
}

double min_eigenvalue(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

double max_eigenvalue(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

double matrix_full_sum(int n, double alpha, double xi, double diag_scale) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  // Off-diagonal pairs grouped by distance d, each appearing 2(N - d) times.
  double off = 0.0;
  for (int d = n - 1; d >= 1; --d) {
    off += 2.0 * static_cast<double>(n - d) * std::pow(static_cast<double>(d), -alpha);
  }
  return xi * (static_cast<double>(n) * diag_scale + off);
}

double matrix_diag_sum(int n, double xi, double diag_scale) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  return xi * diag_scale * static_cast<double>(n);
}

}  // namespace corrsense::noise
