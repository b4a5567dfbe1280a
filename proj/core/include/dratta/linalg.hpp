#pragma once

#include <Eigen/Core>

namespace dratta {

/// max |M - M^T| over all elements.
double symmetry_gap(const Eigen::MatrixXd& m);

bool is_symmetric(const Eigen::MatrixXd& m, double tol = 1e-10);

/// (M + M^T) / 2, absorbs roundoff so downstream eigen-solvers see exact symmetry.
Eigen::MatrixXd symmetrize(const Eigen::MatrixXd& m);

/// True if m is symmetric with strictly positive eigenvalues.
bool is_spd(const Eigen::MatrixXd& m, double sym_tol = 1e-10);

/// Inverse of a symmetric positive definite matrix via eigendecomposition.
/// Throws NumericError if the matrix is not SPD or its condition number
/// exceeds 1e12; silent regularization is never applied. `label` names the
/// offending matrix in the error message.
Eigen::MatrixXd spd_inverse(const Eigen::MatrixXd& m, const char* label = "matrix");

/// Squared Mahalanobis norm r^2 = v^T S^{-1} v through a Cholesky solve,
/// computed as ||L^{-1} v||^2 so the result is nonnegative by construction.
/// Throws NumericError if S is not SPD.
double mahalanobis_sq(const Eigen::VectorXd& v, const Eigen::MatrixXd& s,
                      const char* label = "innovation covariance");

/// Flip the sign of each row whose first nonzero entry is negative.
/// Canonicalizes objects that are unique only up to sign.
Eigen::MatrixXd canonical_row_signs(const Eigen::MatrixXd& m, double tol = 1e-14);

}  // namespace dratta
