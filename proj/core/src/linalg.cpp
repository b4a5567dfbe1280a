#include "dratta/linalg.hpp"

#include <string>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "dratta/errors.hpp"

namespace dratta {

double symmetry_gap(const Eigen::MatrixXd& m) {
    if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
    return (m - m.transpose()).cwiseAbs().maxCoeff();
}

bool is_symmetric(const Eigen::MatrixXd& m, double tol) {
    return m.rows() == m.cols() && symmetry_gap(m) <= tol;
}

Eigen::MatrixXd symmetrize(const Eigen::MatrixXd& m) {
    return 0.5 * (m + m.transpose());
}

bool is_spd(const Eigen::MatrixXd& m, double sym_tol) {
    if (!is_symmetric(m, sym_tol)) return false;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(symmetrize(m),
                                                       Eigen::EigenvaluesOnly);
    return eig.info() == Eigen::Success && eig.eigenvalues().minCoeff() > 0.0;
}

Eigen::MatrixXd spd_inverse(const Eigen::MatrixXd& m, const char* label) {
    if (!is_symmetric(m))
        throw NumericError(std::string(label) + ": not symmetric");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(symmetrize(m));
    if (eig.info() != Eigen::Success)
        throw NumericError(std::string(label) + ": eigendecomposition failed");
    const Eigen::VectorXd& ev = eig.eigenvalues();
    const double lo = ev.minCoeff();
    const double hi = ev.maxCoeff();
    if (lo <= 0.0)
        throw NumericError(std::string(label) + ": not positive definite");
    if (hi / lo > 1e12)
        throw NumericError(std::string(label) + ": condition number exceeds 1e12");
    return eig.eigenvectors() * ev.cwiseInverse().asDiagonal() *
           eig.eigenvectors().transpose();
}

double mahalanobis_sq(const Eigen::VectorXd& v, const Eigen::MatrixXd& s,
                      const char* label) {
    Eigen::LLT<Eigen::MatrixXd> llt(symmetrize(s));
    if (llt.info() != Eigen::Success)
        throw NumericError(std::string(label) + ": not positive definite");
    return llt.matrixL().solve(v).squaredNorm();
}

Eigen::MatrixXd canonical_row_signs(const Eigen::MatrixXd& m, double tol) {
    Eigen::MatrixXd out = m;
    for (Eigen::Index r = 0; r < out.rows(); ++r) {
        for (Eigen::Index c = 0; c < out.cols(); ++c) {
            if (std::abs(out(r, c)) > tol) {
                if (out(r, c) < 0.0) out.row(r) = -out.row(r);
                break;
            }
        }
    }
    return out;
}

}  // namespace dratta
