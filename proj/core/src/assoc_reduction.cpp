#include "dratta/assoc_reduction.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "dratta/errors.hpp"
#include "dratta/gevo.hpp"
#include "dratta/linalg.hpp"

namespace dratta {

RatioObjective::RatioObjective(const Eigen::VectorXd& y_diff, Eigen::MatrixXd s_hat,
                               int index_i)
    : y_outer_(y_diff * y_diff.transpose()),
      s_hat_(std::move(s_hat)),
      index_i_(index_i) {
    finalize();
}

RatioObjective::RatioObjective(Eigen::MatrixXd y_outer, Eigen::MatrixXd s_hat,
                               int index_i)
    : y_outer_(std::move(y_outer)), s_hat_(std::move(s_hat)), index_i_(index_i) {
    if (!is_symmetric(y_outer_))
        throw std::invalid_argument("RatioObjective: y_outer not symmetric");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(y_outer_,
                                                      Eigen::EigenvaluesOnly);
    const Eigen::VectorXd ev = es.eigenvalues();
    const double top = ev(ev.size() - 1);
    const double scale = std::max(1.0, std::abs(top));
    if (ev(0) < -1e-10 * scale)
        throw std::invalid_argument("RatioObjective: y_outer not positive semidefinite");
    if (ev.size() > 1 && ev(ev.size() - 2) > 1e-10 * scale)
        throw std::invalid_argument("RatioObjective: y_outer rank exceeds one");
    finalize();
}

void RatioObjective::finalize() {
    if (s_hat_.rows() != y_outer_.rows() || s_hat_.cols() != y_outer_.cols())
        throw std::invalid_argument("RatioObjective: dimension mismatch");
    if (!is_spd(s_hat_))
        throw NumericError("RatioObjective: s_hat not positive definite");
    const GevoSolution sol = gen_eig_spd(y_outer_, s_hat_);
    const int last = static_cast<int>(sol.eigenvalues.size()) - 1;
    lambda_max_ = sol.eigenvalues(last);
    u_max_ = sol.eigenvectors.col(last);
}

double ratio_eval(const RatioObjective& obj, const Eigen::VectorXd& z) {
    if (z.size() != obj.dim())
        throw std::invalid_argument("ratio_eval: dimension mismatch");
    const double denom = z.dot(obj.s_hat() * z);
    if (denom <= 0.0) throw std::invalid_argument("ratio_eval: zero vector");
    return z.dot(obj.y_outer() * z) / denom;
}

std::pair<Eigen::VectorXd, double> ratio_argmax(const RatioObjective& obj) {
    return {obj.u_max(), obj.lambda_max()};
}

namespace {

// Slope of the first-order expansion of obj's ratio at z along u:
// 2 u'(Y - f(z)S)z / (z'Sz).
double linear_slope(const RatioObjective& obj, const Eigen::VectorXd& z,
                    const Eigen::VectorXd& u) {
    const double denom = z.dot(obj.s_hat() * z);
    if (denom <= 0.0) throw std::invalid_argument("linear_slope: zero vector");
    const double f = z.dot(obj.y_outer() * z) / denom;
    const Eigen::VectorXd grad_core = obj.y_outer() * z - f * (obj.s_hat() * z);
    return 2.0 * u.dot(grad_core) / denom;
}

}  // namespace

double ratio_linearize(const RatioObjective& obj, const Eigen::VectorXd& z,
                       const Eigen::VectorXd& u, double alpha) {
    return ratio_eval(obj, z) + alpha * linear_slope(obj, z, u);
}

int worst_index(const std::vector<RatioObjective>& objs, const Eigen::VectorXd& z) {
    if (objs.empty()) throw std::invalid_argument("worst_index: empty objective list");
    int best = 0;
    double best_val = ratio_eval(objs[0], z);
    for (int i = 1; i < static_cast<int>(objs.size()); ++i) {
        const double val = ratio_eval(objs[i], z);
        if (val < best_val) {
            best_val = val;
            best = i;
        }
    }
    return best;
}

double select_step(const std::vector<RatioObjective>& objs, const Eigen::VectorXd& z,
                   int i_min, const StepBounds& bounds) {
    if (objs.empty()) throw std::invalid_argument("select_step: empty objective list");
    if (i_min < 0 || i_min >= static_cast<int>(objs.size()))
        throw std::invalid_argument("select_step: i_min out of range");
    if (!(bounds.alpha_low > 0.0) || !(bounds.alpha_high > bounds.alpha_low))
        throw std::invalid_argument("select_step: need 0 < alpha_low < alpha_high");

    const Eigen::VectorXd& u = objs[i_min].u_max();
    const double f_min = ratio_eval(objs[i_min], z);
    const double g_min = linear_slope(objs[i_min], z, u);

    // Crossing points of each rival linearization with the worst one; a
    // candidate is usable only if it moves the worst linearization upward.
    double best = std::numeric_limits<double>::infinity();
    bool found = false;
    for (int i = 0; i < static_cast<int>(objs.size()); ++i) {
        if (i == i_min) continue;
        const double f_i = ratio_eval(objs[i], z);
        const double g_i = linear_slope(objs[i], z, u);
        if (g_i == g_min) continue;
        const double alpha = (f_min - f_i) / (g_i - g_min);
        if (!std::isfinite(alpha)) continue;
        if (alpha * g_min <= 0.0) continue;
        if (std::abs(alpha) < std::abs(best)) {
            best = alpha;
            found = true;
        }
    }

    if (!found) return g_min < 0.0 ? -bounds.alpha_high : bounds.alpha_high;
    const double sign = best < 0.0 ? -1.0 : 1.0;
    const double mag =
        std::min(std::max(std::abs(best), bounds.alpha_low), bounds.alpha_high);
    return sign * mag;
}

namespace {

std::vector<RatioObjective> build_objectives(const TrackSet& s2, int j) {
    if (s2.size() < 2)
        throw std::invalid_argument("association reduction: need at least two tracks");
    if (j < 0 || j >= s2.size())
        throw std::invalid_argument("association reduction: track index out of range");
    std::vector<RatioObjective> objs;
    objs.reserve(s2.size() - 1);
    for (int i = 0; i < s2.size(); ++i) {
        if (i == j) continue;
        objs.emplace_back(Eigen::VectorXd(s2[i].mean() - s2[j].mean()),
                          Eigen::MatrixXd(s2[i].cov() + s2[j].cov()), i);
    }
    return objs;
}

Eigen::VectorXd initial_iterate(const std::vector<RatioObjective>& objs) {
    Eigen::VectorXd z0 = Eigen::VectorXd::Zero(objs[0].dim());
    for (const RatioObjective& obj : objs) {
        if (obj.lambda_max() <= 1e-12)
            throw NumericError(
                "association reduction: coincident track means leave a rival "
                "objective with no positive eigenvalue");
        z0 += obj.u_max() / obj.lambda_max();
    }
    const double norm = z0.norm();
    if (norm <= 0.0)
        throw NumericError("association reduction: degenerate initial direction");
    return z0 / norm;
}

using StepRule = double (*)(const std::vector<RatioObjective>&, const Eigen::VectorXd&,
                            int, const void*);

std::pair<ReductionMap, std::vector<OptimizerState>> run_maximin(
    const TrackSet& s2, int j, int k_max, StepRule rule, const void* rule_ctx) {
    if (k_max < 1)
        throw std::invalid_argument("association reduction: k_max must be positive");
    const std::vector<RatioObjective> objs = build_objectives(s2, j);
    Eigen::VectorXd z = initial_iterate(objs);

    std::vector<OptimizerState> trace;
    trace.reserve(k_max + 1);
    std::vector<double> alpha_history;
    std::vector<double> f_min_history;

    auto ratios_at = [&objs](const Eigen::VectorXd& point) {
        std::vector<double> vals;
        vals.reserve(objs.size());
        for (const RatioObjective& obj : objs) vals.push_back(ratio_eval(obj, point));
        return vals;
    };

    std::vector<double> f_vals = ratios_at(z);
    int i_min = worst_index(objs, z);
    trace.push_back(OptimizerState{z, 0, f_vals, i_min, {}, {}});

    for (int k = 1; k <= k_max; ++k) {
        f_vals = ratios_at(z);
        i_min = worst_index(objs, z);
        f_min_history.push_back(f_vals[i_min]);
        const double alpha = rule(objs, z, i_min, rule_ctx);
        alpha_history.push_back(alpha);
        z = (z + alpha * objs[i_min].u_max()).normalized();
        trace.push_back(
            OptimizerState{z, k, f_vals, i_min, alpha_history, f_min_history});
    }

    return {ReductionMap(z.transpose()), std::move(trace)};
}

}  // namespace

std::pair<ReductionMap, std::vector<OptimizerState>> association_optimal_reduction(
    const TrackSet& s2, int j, const StepBounds& bounds, int k_max) {
    const auto rule = [](const std::vector<RatioObjective>& objs,
                         const Eigen::VectorXd& z, int i_min,
                         const void* ctx) -> double {
        return select_step(objs, z, i_min, *static_cast<const StepBounds*>(ctx));
    };
    return run_maximin(s2, j, k_max, rule, &bounds);
}

std::pair<ReductionMap, std::vector<OptimizerState>> fixed_step_reduction(
    const TrackSet& s2, int j, double alpha, int k_max) {
    if (!(alpha > 0.0))
        throw std::invalid_argument("fixed_step_reduction: alpha must be positive");
    const auto rule = [](const std::vector<RatioObjective>& objs,
                         const Eigen::VectorXd& z, int i_min,
                         const void* ctx) -> double {
        const double mag = *static_cast<const double*>(ctx);
        const double g_min = linear_slope(objs[i_min], z, objs[i_min].u_max());
        return g_min < 0.0 ? -mag : mag;
    };
    return run_maximin(s2, j, k_max, rule, &alpha);
}

MomentPrediction predict_moments(const Eigen::VectorXd& x_diff,
                                 const Eigen::MatrixXd& s, const ReductionMap& map) {
    if (x_diff.size() != map.in_dim() || s.rows() != map.in_dim() ||
        s.cols() != map.in_dim())
        throw std::invalid_argument("predict_moments: dimension mismatch");
    const Eigen::MatrixXd& psi = map.psi();
    const Eigen::VectorXd proj = psi * x_diff;
    const double nu =
        mahalanobis_sq(proj, symmetrize(psi * s * psi.transpose()));
    const int m = map.out_dim();
    return MomentPrediction{m + nu, 2.0 * m + 4.0 * nu, nu, m};
}

}  // namespace dratta
