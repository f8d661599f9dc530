// noise_model.hpp - power-law spatial coefficient matrix: construction, PSD check, factoring.
#pragma once

#include <Eigen/Dense>

#include "corrsense/errors.hpp"

namespace corrsense::noise {

// 1-D chain of N sensors: cross couplings xi * |j - l|^-alpha, diagonal xi * a_d.
struct PowerLawSpatialModel {
  int n_sensors = 1;
  double alpha = 1.0;      // spatial decay exponent, > 0
  double xi = 1.0;         // overall noise strength, > 0
  double diag_scale = 2.0; // a_d; the default keeps the matrix PSD at every alpha > 0

  void validate() const;
};

// Symmetric PSD coefficient matrix of the correlated dephasing generator,
// together with the base rate gamma that multiplies it.
struct DephasingMatrix {
  Eigen::MatrixXd entries;
  double gamma = 1.0;

  int n() const { return static_cast<int>(entries.rows()); }
};

// Symmetric factor g with g^T g = A; columns are the sensor coupling vectors.
struct FactorMatrix {
  Eigen::MatrixXd entries;
};

// Builds the matrix and verifies symmetry and positive semidefiniteness.
// Throws PSDViolation if the smallest eigenvalue is below -1e-10 * largest.
DephasingMatrix build_dephasing_matrix(const PowerLawSpatialModel& model, double gamma);

// Symmetric PSD square root via eigendecomposition.  Eigenvalues in
// [-1e-10 * max, 0) are clamped to zero; anything lower raises PSDViolation.
FactorMatrix factor_sqrt(const DephasingMatrix& a);

// Entrywise A / (4 xi): the strength-derivative coupling product used by the
// short-time information rate.
Eigen::MatrixXd dxi_factor_product(const DephasingMatrix& a, double xi);

// Eigenvalue extremes of a symmetric matrix (eigenvalues-only solve).
double min_eigenvalue(const Eigen::MatrixXd& m);
double max_eigenvalue(const Eigen::MatrixXd& m);

// Toeplitz sums sum_{jl} A_jl and sum_j A_jj in O(N), for sweeps that must not
// allocate N x N objects.
double matrix_full_sum(int n, double alpha, double xi, double diag_scale);
double matrix_diag_sum(int n, double xi, double diag_scale);

}  // namespace corrsense::noise
