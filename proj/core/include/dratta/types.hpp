#pragma once

#include <vector>

#include <Eigen/Core>

namespace dratta {

/// One track: state mean, SPD covariance and a 0-based track index.
/// (Reports and file formats use 1-based labels; in memory everything is
/// 0-based.) Validated on construction, immutable afterwards.
class Estimate {
public:
    Estimate(Eigen::VectorXd mean, Eigen::MatrixXd cov, int label);

    const Eigen::VectorXd& mean() const { return mean_; }
    const Eigen::MatrixXd& cov() const { return cov_; }
    int label() const { return label_; }
    Eigen::Index dim() const { return mean_.size(); }

private:
    Eigen::VectorXd mean_;
    Eigen::MatrixXd cov_;
    int label_;
};

/// All N tracks of one agent, labeled 0..N-1 in order and sharing one state
/// dimension.
class TrackSet {
public:
    TrackSet(std::vector<Estimate> estimates, int agent_id);

    const std::vector<Estimate>& estimates() const { return estimates_; }
    const Estimate& operator[](std::size_t i) const { return estimates_[i]; }
    int agent_id() const { return agent_id_; }
    int size() const { return static_cast<int>(estimates_.size()); }
    Eigen::Index dim() const { return estimates_.front().dim(); }

private:
    std::vector<Estimate> estimates_;
    int agent_id_;
};

/// Full-rank m x n map that compresses an n-dimensional estimate to m
/// dimensions. m = n is permitted so the identity map can stand in for "no
/// reduction" in tests and consistency checks; communication use has m < n.
class ReductionMap {
public:
    explicit ReductionMap(Eigen::MatrixXd psi);

    /// Convenience for m = 1: the single row as a unit-free row vector.
    static ReductionMap row(const Eigen::VectorXd& direction);

    const Eigen::MatrixXd& psi() const { return psi_; }
    Eigen::Index out_dim() const { return psi_.rows(); }
    Eigen::Index in_dim() const { return psi_.cols(); }

private:
    Eigen::MatrixXd psi_;
};

/// A compressed estimate (psi y, psi R psi^T) together with the map that
/// produced it.
class ReducedEstimate {
public:
    ReducedEstimate(Eigen::VectorXd mean, Eigen::MatrixXd cov, ReductionMap map,
                    int label);

    const Eigen::VectorXd& mean() const { return mean_; }
    const Eigen::MatrixXd& cov() const { return cov_; }
    const ReductionMap& map() const { return map_; }
    int label() const { return label_; }
    Eigen::Index dim() const { return mean_.size(); }

private:
    Eigen::VectorXd mean_;
    Eigen::MatrixXd cov_;
    ReductionMap map_;
    int label_;
};

/// Output of the Kalman fuser.
struct FusedEstimate {
    Eigen::VectorXd mean;
    Eigen::MatrixXd cov;
};

}  // namespace dratta
