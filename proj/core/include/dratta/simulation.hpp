#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "dratta/assignment.hpp"
#include "dratta/assoc_reduction.hpp"
#include "dratta/rng.hpp"
#include "dratta/types.hpp"

namespace dratta {

// Ground truth plus the two agents' per-track covariances, held fixed for a
// whole experiment. Targets are n-vectors; kinematic truth components are
// zero in the generated scenarios.
struct Scenario {
    std::vector<Eigen::VectorXd> targets;
    std::vector<Eigen::MatrixXd> cov1;
    std::vector<Eigen::MatrixXd> cov2;
    int n = 0;
    int num_targets = 0;
    int m = 1;

    void validate() const;
};

enum class Method { Full, FusionOpt, AssocOpt };

const char* method_name(Method method);

// Parameters the reduced methods need per run.
struct RunParams {
    int m = 1;
    StepBounds bounds;
    int k_max = 25;
};

struct McConfig {
    int runs = 1000;
    std::vector<double> c_grid;  // ascending, positive
    std::uint64_t seed = 0;
    StepBounds bounds;
    int k_max = 25;
    std::vector<Method> methods = {Method::Full, Method::FusionOpt, Method::AssocOpt};

    void validate() const;
};

struct McCell {
    Method method = Method::Full;
    double c = 1.0;
    double p_ic_mean = 0.0;
    double p_ic_std = 0.0;
    int runs = 0;
};

struct McResult {
    std::vector<McCell> cells;  // method-major, c ascending within a method
};

// Spec for generate_scenario. Positions are planar; the state is
// (px, py, vx, vy, ax, ay) so n = 2 + kinematic dims.
struct ScenarioSpec {
    int num_targets = 10;
    int n = 6;
    int m = 1;
    std::vector<Eigen::Vector2d> positions;  // empty selects the default layout
    std::uint64_t cov_seed = 0x6b67656e636f76ULL;
};

// One row of the angle sweep in the two-target projection study.
struct MotivatingRow {
    double alpha_deg = 0.0;
    double j0 = 0.0;       // cost of the correct pairing
    double je = 0.0;       // cost of the swapped pairing
    double trace_p = 0.0;  // fused covariance trace at this projection
};

// Two noise realizations of the same two-target scenario pushed through a
// shared fusion-optimal projection.
struct RealizationDemo {
    AssignmentMatrix mat_a;
    AssignmentMatrix mat_b;
    Assignment sol_a;
    Assignment sol_b;
};

// Returns a copy with both agents' position variances scaled by c
// (congruence with diag(sqrt(c), sqrt(c), 1, ..., 1)). Requires c > 0.
Scenario scale_spatial(const Scenario& s, double c);

// Draws one noisy track set per agent, labels aligned with the targets.
// Agent 1's tracks are sampled first, each in label order.
std::pair<TrackSet, TrackSet> sample_realization(const Scenario& s, SplitMix64& rng);

// Associates the two track sets with the given method and returns how many
// tracks land on the wrong target. Full uses the n-dimensional distances;
// the reduced methods compress agent 2's tracks to params.m dimensions
// first (fusion-optimal maps use both covariance sets, association-optimal
// maps use agent 2's data alone).
int run_single(const TrackSet& s1, const TrackSet& s2, Method method,
               const RunParams& params);

// Monte Carlo sweep over cfg.c_grid. Within a run all methods see the same
// realization, and run r always uses the substream derive_seed(seed, r), so
// realizations are coupled across c values as well.
McResult mc_sweep(const McConfig& cfg, const Scenario& s);

// Two-target planar study: project both agents onto [cos a, sin a] and
// report association costs and fused trace per angle.
std::vector<MotivatingRow> motivating_example(const std::vector<double>& angles_deg);

// Same scenario, two seeds, shared fusion-optimal projection; shows the
// assignment outcome flipping with the noise realization.
RealizationDemo realization_demo(std::uint64_t seed_a, std::uint64_t seed_b);

// Three-track set used by the optimizer trace: planar anchors embedded in a
// four-dimensional state, covariances drawn as scaled Wishart matrices with
// a ridge, means jittered by their own covariance. Deliberately generic so
// the step-size variants are compared on an unstructured landscape.
TrackSet optimizer_demo_tracks(std::uint64_t seed);

// Builds the default tracking scenario: planar targets, zero kinematic
// truth, covariances drawn once from the seeded ensemble described in the
// implementation and then held fixed.
Scenario generate_scenario(const ScenarioSpec& spec);

// The ten default target positions.
std::vector<Eigen::Vector2d> default_positions();

}  // namespace dratta
