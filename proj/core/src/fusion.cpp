#include "dratta/fusion.hpp"

#include <stdexcept>

#include "dratta/linalg.hpp"

namespace dratta {

ReducedEstimate reduce_estimate(const Estimate& e, const ReductionMap& map) {
    if (map.in_dim() != e.dim())
        throw std::invalid_argument("reduce_estimate: map columns must match estimate dimension");
    const Eigen::MatrixXd& psi = map.psi();
    Eigen::VectorXd mean = psi * e.mean();
    Eigen::MatrixXd cov = symmetrize(psi * e.cov() * psi.transpose());
    return ReducedEstimate(std::move(mean), std::move(cov), map, e.label());
}

FusedEstimate kalman_fuse(const Estimate& local, const ReducedEstimate& reduced) {
    if (reduced.map().in_dim() != local.dim())
        throw std::invalid_argument("kalman_fuse: estimates live in different state spaces");
    const Eigen::MatrixXd& psi = reduced.map().psi();

    const Eigen::MatrixXd r1_inv = spd_inverse(local.cov(), "local covariance");
    const Eigen::MatrixXd rpsi_inv = spd_inverse(reduced.cov(), "reduced covariance");

    const Eigen::MatrixXd info = r1_inv + psi.transpose() * rpsi_inv * psi;
    Eigen::MatrixXd p = symmetrize(spd_inverse(symmetrize(info), "fused information"));
    Eigen::VectorXd xhat =
        p * (r1_inv * local.mean() + psi.transpose() * rpsi_inv * reduced.mean());
    return FusedEstimate{std::move(xhat), std::move(p)};
}

double fusion_loss(const FusedEstimate& fused) { return fused.cov.trace(); }

}  // namespace dratta
