#include "dratta/gevo.hpp"

#include <stdexcept>

#include "dratta/errors.hpp"
#include "dratta/linalg.hpp"

namespace dratta {

GevoSolution gen_eig_spd(const Eigen::MatrixXd& q, const Eigen::MatrixXd& s) {
    if (q.rows() != q.cols() || s.rows() != s.cols() || q.rows() != s.rows())
        throw std::invalid_argument("gen_eig_spd: matrices must be square and equal size");
    if (!is_symmetric(q)) throw std::invalid_argument("gen_eig_spd: q not symmetric");
    if (!is_spd(s)) throw NumericError("gen_eig_spd: s not positive definite");
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver(
        symmetrize(q), symmetrize(s), Eigen::ComputeEigenvectors | Eigen::Ax_lBx);
    if (solver.info() != Eigen::Success)
        throw NumericError("gen_eig_spd: eigensolver failed");
    return GevoSolution{solver.eigenvalues(), solver.eigenvectors()};
}

ReductionMap fusion_optimal_reduction(const Eigen::MatrixXd& r1,
                                      const Eigen::MatrixXd& r2, int m) {
    const int n = static_cast<int>(r1.rows());
    if (r2.rows() != n || r2.cols() != n || r1.cols() != n)
        throw std::invalid_argument("fusion_optimal_reduction: covariance size mismatch");
    if (m < 1 || m >= n)
        throw std::invalid_argument("fusion_optimal_reduction: m must satisfy 1 <= m < n");
    if (!is_spd(r1)) throw NumericError("fusion_optimal_reduction: r1 not positive definite");
    if (!is_spd(r2)) throw NumericError("fusion_optimal_reduction: r2 not positive definite");

    const Eigen::MatrixXd q = symmetrize(r1 * r1);
    const Eigen::MatrixXd s = symmetrize(r1 + r2);
    const GevoSolution sol = gen_eig_spd(q, s);

    // Top-m eigenvectors span the subspace; QR gives an orthonormal basis of it.
    const Eigen::MatrixXd top = sol.eigenvectors.rightCols(m);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(top);
    const Eigen::MatrixXd v =
        qr.householderQ() * Eigen::MatrixXd::Identity(n, m);

    // Rotate so the reduced remote covariance is diagonal.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> rot(
        symmetrize(v.transpose() * r2 * v));
    if (rot.info() != Eigen::Success)
        throw NumericError("fusion_optimal_reduction: rotation eigensolver failed");
    Eigen::MatrixXd psi = rot.eigenvectors().transpose() * v.transpose();

    return ReductionMap(canonical_row_signs(psi));
}

}  // namespace dratta
