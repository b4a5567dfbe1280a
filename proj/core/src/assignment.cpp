#include "dratta/assignment.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "dratta/linalg.hpp"

namespace dratta {

AssignmentMatrix::AssignmentMatrix(Eigen::MatrixXd costs, MatrixKind kind)
    : costs_(std::move(costs)), kind_(kind) {
    if (costs_.rows() != costs_.cols() || costs_.rows() < 1)
        throw std::invalid_argument("AssignmentMatrix: must be square and nonempty");
    if (!(costs_.array() >= 0.0).all())
        throw std::invalid_argument("AssignmentMatrix: entries must be nonnegative");
}

double md_full(const Estimate& a, const Estimate& b) {
    if (a.dim() != b.dim())
        throw std::invalid_argument("md_full: dimension mismatch");
    return mahalanobis_sq(a.mean() - b.mean(), a.cov() + b.cov());
}

double md_reduced(const Estimate& a, const ReducedEstimate& b_reduced) {
    if (b_reduced.map().in_dim() != a.dim())
        throw std::invalid_argument("md_reduced: dimension mismatch");
    const Eigen::MatrixXd& psi = b_reduced.map().psi();
    const Eigen::VectorXd z = psi * a.mean() - b_reduced.mean();
    const Eigen::MatrixXd m =
        symmetrize(psi * a.cov() * psi.transpose()) + b_reduced.cov();
    return mahalanobis_sq(z, m);
}

AssignmentMatrix build_full_matrix(const TrackSet& s1, const TrackSet& s2) {
    if (s1.size() != s2.size())
        throw std::invalid_argument("build_full_matrix: track sets differ in size");
    if (s1.dim() != s2.dim())
        throw std::invalid_argument("build_full_matrix: track sets differ in dimension");
    const int n = s1.size();
    Eigen::MatrixXd costs(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) costs(i, j) = md_full(s1[i], s2[j]);
    return AssignmentMatrix(std::move(costs), MatrixKind::Full);
}

AssignmentMatrix build_reduced_matrix(const TrackSet& s1,
                                      const std::vector<ReducedEstimate>& reduced) {
    if (static_cast<int>(reduced.size()) != s1.size())
        throw std::invalid_argument("build_reduced_matrix: size mismatch");
    const int n = s1.size();
    Eigen::MatrixXd costs(n, n);
    for (int j = 0; j < n; ++j) {
        if (reduced[j].label() != j)
            throw std::invalid_argument("build_reduced_matrix: reduced estimates out of label order");
        for (int i = 0; i < n; ++i) costs(i, j) = md_reduced(s1[i], reduced[j]);
    }
    return AssignmentMatrix(std::move(costs), MatrixKind::Reduced);
}

AssignmentMatrix build_approx_matrix(const TrackSet& s2,
                                     const std::vector<ReductionMap>& maps) {
    if (static_cast<int>(maps.size()) != s2.size())
        throw std::invalid_argument("build_approx_matrix: size mismatch");
    const int n = s2.size();
    Eigen::MatrixXd costs(n, n);
    for (int j = 0; j < n; ++j) {
        const Eigen::MatrixXd& psi = maps[j].psi();
        if (maps[j].in_dim() != s2.dim())
            throw std::invalid_argument("build_approx_matrix: map dimension mismatch");
        for (int i = 0; i < n; ++i) {
            if (i == j) {
                costs(i, j) = 0.0;
                continue;
            }
            const Eigen::VectorXd yhat = s2[i].mean() - s2[j].mean();
            const Eigen::MatrixXd shat = s2[i].cov() + s2[j].cov();
            costs(i, j) = mahalanobis_sq(psi * yhat,
                                         symmetrize(psi * shat * psi.transpose()));
        }
    }
    return AssignmentMatrix(std::move(costs), MatrixKind::Approximated);
}

namespace {

// Shortest augmenting path LAP on cost(row_ids x col_ids). Returns the
// assigned column (index into col_ids) for each row, in row order.
std::vector<int> jv_solve(const Eigen::MatrixXd& cost, const std::vector<int>& row_ids,
                          const std::vector<int>& col_ids) {
    const int n = static_cast<int>(row_ids.size());
    constexpr double kInf = std::numeric_limits<double>::infinity();
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
    std::vector<int> p(n + 1, 0), way(n + 1, 0);
    for (int i = 1; i <= n; ++i) {
        p[0] = i;
        int j0 = 0;
        std::vector<double> minv(n + 1, kInf);
        std::vector<char> used(n + 1, 0);
        do {
            used[j0] = 1;
            const int i0 = p[j0];
            int j1 = 0;
            double delta = kInf;
            for (int j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const double cur = cost(row_ids[i0 - 1], col_ids[j - 1]) - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            const int j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0);
    }
    std::vector<int> rowsol(n, -1);
    for (int j = 1; j <= n; ++j)
        if (p[j] > 0) rowsol[p[j] - 1] = j - 1;
    return rowsol;
}

// Left-to-right sum of the entries selected by colsol over rows 0..N-1. The
// fixed order makes equal assignments produce bitwise-equal costs.
double ordered_cost(const Eigen::MatrixXd& cost, const std::vector<int>& colsol) {
    double total = 0.0;
    for (std::size_t i = 0; i < colsol.size(); ++i)
        total += cost(static_cast<int>(i), colsol[i]);
    return total;
}

// Rewrites colsol into the lexicographically smallest permutation whose
// row-ordered cost is bitwise equal to the optimum. Fixes one row at a
// time, re-solving the remaining subproblem per candidate column; bails out
// keeping the current solution if roundoff ever hides the known completion.
void lexicographic_refine(const Eigen::MatrixXd& cost, std::vector<int>& colsol) {
    const int n = static_cast<int>(colsol.size());
    const double best_total = ordered_cost(cost, colsol);
    double prefix = 0.0;
    std::vector<char> col_used(n, 0);
    for (int i = 0; i < n; ++i) {
        std::vector<int> free_cols;
        for (int j = 0; j < n; ++j)
            if (!col_used[j]) free_cols.push_back(j);
        std::vector<int> rest_rows;
        for (int r = i + 1; r < n; ++r) rest_rows.push_back(r);

        for (int j : free_cols) {
            if (j >= colsol[i]) break;  // only a smaller column can improve lex order
            std::vector<int> sub_cols;
            for (int c : free_cols)
                if (c != j) sub_cols.push_back(c);
            std::vector<int> tail(n - i - 1, -1);
            if (!rest_rows.empty()) {
                const std::vector<int> sub = jv_solve(cost, rest_rows, sub_cols);
                for (int r = 0; r < static_cast<int>(rest_rows.size()); ++r)
                    tail[r] = sub_cols[sub[r]];
            }
            double total = prefix + cost(i, j);
            for (int r = 0; r < static_cast<int>(tail.size()); ++r)
                total += cost(rest_rows[r], tail[r]);
            if (total == best_total) {
                colsol[i] = j;
                for (int r = 0; r < static_cast<int>(tail.size()); ++r)
                    colsol[rest_rows[r]] = tail[r];
                break;
            }
        }
        col_used[colsol[i]] = 1;
        prefix += cost(i, colsol[i]);
    }
}

}  // namespace

Assignment solve_lap(const AssignmentMatrix& a) {
    const Eigen::MatrixXd& cost = a.costs();
    if (!cost.allFinite())
        throw std::invalid_argument("solve_lap: non-finite cost entries");
    const int n = a.size();
    std::vector<int> rows(n), cols(n);
    for (int i = 0; i < n; ++i) rows[i] = cols[i] = i;
    std::vector<int> colsol = jv_solve(cost, rows, cols);
    lexicographic_refine(cost, colsol);
    return Assignment{colsol, ordered_cost(cost, colsol)};
}

int count_incorrect(const Assignment& a) {
    int wrong = 0;
    for (std::size_t i = 0; i < a.perm.size(); ++i)
        if (a.perm[i] != static_cast<int>(i)) ++wrong;
    return wrong;
}

}  // namespace dratta
