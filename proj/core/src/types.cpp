#include "dratta/types.hpp"

#include <stdexcept>
#include <string>
#include <utility>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "dratta/linalg.hpp"

namespace dratta {

namespace {

void check_spd(const Eigen::MatrixXd& cov, const char* what) {
    if (symmetry_gap(cov) > 1e-10)
        throw std::invalid_argument(std::string(what) + ": covariance not symmetric");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(symmetrize(cov),
                                                       Eigen::EigenvaluesOnly);
    if (eig.info() != Eigen::Success || eig.eigenvalues().minCoeff() <= 0.0)
        throw std::invalid_argument(std::string(what) +
                                    ": covariance not positive definite");
}

}  // namespace

Estimate::Estimate(Eigen::VectorXd mean, Eigen::MatrixXd cov, int label)
    : mean_(std::move(mean)), cov_(std::move(cov)), label_(label) {
    if (mean_.size() != cov_.rows() || cov_.rows() != cov_.cols())
        throw std::invalid_argument("Estimate: mean length must equal covariance dimension");
    check_spd(cov_, "Estimate");
    if (label_ < 0) throw std::invalid_argument("Estimate: negative label");
}

TrackSet::TrackSet(std::vector<Estimate> estimates, int agent_id)
    : estimates_(std::move(estimates)), agent_id_(agent_id) {
    if (estimates_.empty()) throw std::invalid_argument("TrackSet: empty");
    if (agent_id_ != 1 && agent_id_ != 2)
        throw std::invalid_argument("TrackSet: agent_id must be 1 or 2");
    const Eigen::Index n = estimates_.front().dim();
    for (std::size_t i = 0; i < estimates_.size(); ++i) {
        if (estimates_[i].dim() != n)
            throw std::invalid_argument("TrackSet: mixed state dimensions");
        if (estimates_[i].label() != static_cast<int>(i))
            throw std::invalid_argument("TrackSet: labels must be 0..N-1 in order");
    }
}

ReductionMap::ReductionMap(Eigen::MatrixXd psi) : psi_(std::move(psi)) {
    if (psi_.rows() < 1 || psi_.rows() > psi_.cols())
        throw std::invalid_argument("ReductionMap: need 1 <= m <= n");
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(psi_);
    const auto& sv = svd.singularValues();
    if (sv(sv.size() - 1) <= 1e-12 * sv(0))
        throw std::invalid_argument("ReductionMap: rank-deficient map");
}

ReductionMap ReductionMap::row(const Eigen::VectorXd& direction) {
    return ReductionMap(direction.transpose());
}

ReducedEstimate::ReducedEstimate(Eigen::VectorXd mean, Eigen::MatrixXd cov,
                                 ReductionMap map, int label)
    : mean_(std::move(mean)), cov_(std::move(cov)), map_(std::move(map)), label_(label) {
    if (mean_.size() != map_.out_dim() || cov_.rows() != map_.out_dim() ||
        cov_.rows() != cov_.cols())
        throw std::invalid_argument("ReducedEstimate: dimensions do not match the map");
    check_spd(cov_, "ReducedEstimate");
}

}  // namespace dratta
