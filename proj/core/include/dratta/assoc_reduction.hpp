#pragma once

#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "dratta/types.hpp"

namespace dratta {

// One quadratic-form ratio f(z) = (z' y_outer z)/(z' s_hat z) separating a
// rival track i from the track j being reduced. y_outer is the rank-1 outer
// product of the mean difference, s_hat the summed covariance of the pair.
// The maximizing direction and value are solved once at construction.
class RatioObjective {
  public:
    RatioObjective(const Eigen::VectorXd& y_diff, Eigen::MatrixXd s_hat, int index_i);
    // y_outer must be symmetric PSD with rank at most one.
    RatioObjective(Eigen::MatrixXd y_outer, Eigen::MatrixXd s_hat, int index_i);

    const Eigen::MatrixXd& y_outer() const { return y_outer_; }
    const Eigen::MatrixXd& s_hat() const { return s_hat_; }
    int index_i() const { return index_i_; }
    int dim() const { return static_cast<int>(s_hat_.rows()); }

    // Maximizer of the ratio and the maximum value (the only strictly
    // positive generalized eigenvalue of the rank-1 pair).
    const Eigen::VectorXd& u_max() const { return u_max_; }
    double lambda_max() const { return lambda_max_; }

  private:
    void finalize();

    Eigen::MatrixXd y_outer_;
    Eigen::MatrixXd s_hat_;
    int index_i_;
    Eigen::VectorXd u_max_;
    double lambda_max_ = 0.0;
};

// Adaptive step-size interval. The step magnitude chosen each iteration is
// clamped into [alpha_low, alpha_high].
struct StepBounds {
    double alpha_low = 1e-3;
    double alpha_high = 0.5;
};

// Snapshot of the maximin iteration after completing iteration k (k = 0 is
// the initial point; histories are then empty). f_values and i_min refer to
// the iterate the step was computed from, z to the iterate produced.
// f_min_history[t] is the worst ratio at the start of iteration t+1, so the
// histories have length k.
struct OptimizerState {
    Eigen::VectorXd z;
    int k = 0;
    std::vector<double> f_values;
    int i_min = 0;  // position within the objective list, not a track index
    std::vector<double> alpha_history;
    std::vector<double> f_min_history;
};

// Predicted first two moments of a squared reduced association distance.
// Central case (same target) has noncentrality 0.
struct MomentPrediction {
    double mean = 0.0;
    double variance = 0.0;
    double noncentrality = 0.0;
    int dof = 0;
};

// Value of the ratio at z. Scale invariant in z; throws on the zero vector.
double ratio_eval(const RatioObjective& obj, const Eigen::VectorXd& z);

// Maximizing direction and maximum value, from the objective's cache.
std::pair<Eigen::VectorXd, double> ratio_argmax(const RatioObjective& obj);

// First-order value of the ratio at z + alpha*u expanded around z:
// f(z) + 2*alpha * u'(Y - f(z)S)z / (z'Sz). Exact at alpha = 0.
double ratio_linearize(const RatioObjective& obj, const Eigen::VectorXd& z,
                       const Eigen::VectorXd& u, double alpha);

// Position of the smallest ratio in objs at z; ties go to the smallest
// position. Throws on an empty list.
int worst_index(const std::vector<RatioObjective>& objs, const Eigen::VectorXd& z);

// Adaptive step along objs[i_min].u_max() from z. Solves the linearized
// crossing equations against each other objective, keeps the candidates
// that increase the worst objective's linearization, picks the smallest
// magnitude, and clamps it into bounds preserving sign. With no usable
// candidate the step is alpha_high in the ascent direction of the worst
// objective. |result| always lies in [alpha_low, alpha_high].
double select_step(const std::vector<RatioObjective>& objs, const Eigen::VectorXd& z,
                   int i_min, const StepBounds& bounds);

// Maximin reduction row for track j computed from agent 2's tracks alone.
// Runs exactly k_max iterations of the adaptive-step ascent and returns the
// final unit row together with the full iteration trace (k_max + 1 states
// including the initial point). Requires at least two tracks and pairwise
// distinct means among the rivals of j.
std::pair<ReductionMap, std::vector<OptimizerState>> association_optimal_reduction(
    const TrackSet& s2, int j, const StepBounds& bounds, int k_max);

// Same iteration with constant step magnitude alpha > 0; the sign per step
// still follows the worst objective's ascent direction.
std::pair<ReductionMap, std::vector<OptimizerState>> fixed_step_reduction(
    const TrackSet& s2, int j, double alpha, int k_max);

// Moments of the squared reduced distance between tracks whose means differ
// by x_diff under summed covariance s: chi-squared with map.out_dim()
// degrees of freedom and noncentrality x_diff' psi'(psi s psi')^-1 psi x_diff.
MomentPrediction predict_moments(const Eigen::VectorXd& x_diff,
                                 const Eigen::MatrixXd& s, const ReductionMap& map);

}  // namespace dratta
