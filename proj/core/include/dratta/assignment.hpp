#pragma once

#include <vector>

#include <Eigen/Core>

#include "dratta/types.hpp"

namespace dratta {

enum class MatrixKind { Full, Reduced, Approximated };

/// Square matrix of nonnegative squared Mahalanobis distances; entry (i, j)
/// scores assigning agent-1 track i to agent-2 track j.
class AssignmentMatrix {
public:
    AssignmentMatrix(Eigen::MatrixXd costs, MatrixKind kind);

    const Eigen::MatrixXd& costs() const { return costs_; }
    MatrixKind kind() const { return kind_; }
    int size() const { return static_cast<int>(costs_.rows()); }

private:
    Eigen::MatrixXd costs_;
    MatrixKind kind_;
};

/// A permutation solution: perm[i] is the agent-1 track assigned to agent-2
/// track i (0-based), cost is the row-ordered sum of the selected entries.
struct Assignment {
    std::vector<int> perm;
    double cost = 0.0;
};

/// Squared Mahalanobis distance between two full estimates:
/// (y1-y2)^T (R1+R2)^{-1} (y1-y2).
double md_full(const Estimate& a, const Estimate& b);

/// Squared Mahalanobis distance between a full estimate and a reduced one,
/// computed in the reduced space: with z = psi*y1 - ypsi and
/// M = psi*R1*psi^T + Rpsi, returns z^T M^{-1} z. Equal to md_full when psi
/// is square full-rank.
double md_reduced(const Estimate& a, const ReducedEstimate& b_reduced);

/// Entry (i, j) = md_full(s1[i], s2[j]).
AssignmentMatrix build_full_matrix(const TrackSet& s1, const TrackSet& s2);

/// Entry (i, j) = md_reduced(s1[i], reduced[j]); column j uses the map
/// carried by reduced[j].
AssignmentMatrix build_reduced_matrix(const TrackSet& s1,
                                      const std::vector<ReducedEstimate>& reduced);

/// Assignment matrix predicted from agent-2 data alone: entry (i, j) uses
/// yhat = y2(i) - y2(j) and Shat = R2(i) + R2(j) projected through maps[j].
/// The diagonal is identically zero.
AssignmentMatrix build_approx_matrix(const TrackSet& s2,
                                     const std::vector<ReductionMap>& maps);

/// Exact minimum-cost assignment via shortest augmenting paths
/// (Jonker-Volgenant style, O(N^3)). Among equal-cost optima the
/// lexicographically smallest permutation array is returned. Throws
/// std::invalid_argument on non-finite entries.
Assignment solve_lap(const AssignmentMatrix& a);

/// Number of indices i with perm[i] != i.
int count_incorrect(const Assignment& a);

}  // namespace dratta
