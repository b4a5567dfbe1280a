#pragma once

#include <Eigen/Dense>

#include "dratta/types.hpp"

namespace dratta {

// Full solution of q z = lambda s z for symmetric psd q and spd s.
// Eigenvalues ascend; eigenvectors are s-orthogonal with z' s z = 1.
struct GevoSolution {
    Eigen::VectorXd eigenvalues;
    Eigen::MatrixXd eigenvectors;  // column k pairs with eigenvalues(k)
};

GevoSolution gen_eig_spd(const Eigen::MatrixXd& q, const Eigen::MatrixXd& s);

// Reduction map minimizing the fused covariance trace for the Kalman fuser.
// Steps: q = r1^2, s = r1 + r2; take the top-m generalized eigenvectors of
// (q, s), orthonormalize them into v, then rotate so the reduced remote
// covariance psi r2 psi' comes out diagonal. Rows have unit norm, psi psi'
// equals the identity, and each row's first nonzero entry is positive.
// Requires 1 <= m < n.
ReductionMap fusion_optimal_reduction(const Eigen::MatrixXd& r1,
                                      const Eigen::MatrixXd& r2, int m);

}  // namespace dratta
