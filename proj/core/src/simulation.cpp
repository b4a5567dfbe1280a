#include "dratta/simulation.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "dratta/errors.hpp"
#include "dratta/fusion.hpp"
#include "dratta/gevo.hpp"
#include "dratta/linalg.hpp"

namespace dratta {

void Scenario::validate() const {
    if (num_targets < 1 || static_cast<int>(targets.size()) != num_targets ||
        static_cast<int>(cov1.size()) != num_targets ||
        static_cast<int>(cov2.size()) != num_targets)
        throw std::invalid_argument("Scenario: inconsistent list lengths");
    if (n < 1 || m < 1 || m > n)
        throw std::invalid_argument("Scenario: bad dimensions");
    for (int i = 0; i < num_targets; ++i) {
        if (targets[i].size() != n)
            throw std::invalid_argument("Scenario: target dimension mismatch");
        if (!is_spd(cov1[i]))
            throw std::invalid_argument("Scenario: cov1 not SPD");
        if (!is_spd(cov2[i]))
            throw std::invalid_argument("Scenario: cov2 not SPD");
        if (cov1[i].rows() != n || cov2[i].rows() != n)
            throw std::invalid_argument("Scenario: covariance dimension mismatch");
        for (int j = 0; j < i; ++j)
            if (targets[i] == targets[j])
                throw std::invalid_argument("Scenario: duplicate target states");
    }
}

const char* method_name(Method method) {
    switch (method) {
        case Method::Full: return "full";
        case Method::FusionOpt: return "fusion-opt";
        case Method::AssocOpt: return "assoc-opt";
    }
    throw std::invalid_argument("method_name: unknown method");
}

void McConfig::validate() const {
    if (runs < 1) throw std::invalid_argument("McConfig: runs must be at least 1");
    if (c_grid.empty()) throw std::invalid_argument("McConfig: empty c grid");
    double prev = 0.0;
    for (double c : c_grid) {
        if (!(c > prev))
            throw std::invalid_argument("McConfig: c grid must be positive ascending");
        prev = c;
    }
    if (!(bounds.alpha_low > 0.0) || !(bounds.alpha_high > bounds.alpha_low))
        throw std::invalid_argument("McConfig: need 0 < alpha_low < alpha_high");
    if (k_max < 1) throw std::invalid_argument("McConfig: k_max must be positive");
    if (methods.empty()) throw std::invalid_argument("McConfig: no methods selected");
}

Scenario scale_spatial(const Scenario& s, double c) {
    if (!(c > 0.0)) throw std::invalid_argument("scale_spatial: c must be positive");
    if (s.n < 2) throw std::invalid_argument("scale_spatial: need at least 2 state dims");
    Eigen::VectorXd d = Eigen::VectorXd::Ones(s.n);
    d(0) = d(1) = std::sqrt(c);
    Scenario out = s;
    for (int i = 0; i < s.num_targets; ++i) {
        out.cov1[i] = symmetrize(d.asDiagonal() * s.cov1[i] * d.asDiagonal());
        out.cov2[i] = symmetrize(d.asDiagonal() * s.cov2[i] * d.asDiagonal());
    }
    return out;
}

std::pair<TrackSet, TrackSet> sample_realization(const Scenario& s, SplitMix64& rng) {
    s.validate();
    std::vector<Estimate> e1, e2;
    e1.reserve(s.num_targets);
    e2.reserve(s.num_targets);
    for (int i = 0; i < s.num_targets; ++i)
        e1.emplace_back(sample_gaussian(s.targets[i], s.cov1[i], rng), s.cov1[i], i);
    for (int i = 0; i < s.num_targets; ++i)
        e2.emplace_back(sample_gaussian(s.targets[i], s.cov2[i], rng), s.cov2[i], i);
    return {TrackSet(std::move(e1), 1), TrackSet(std::move(e2), 2)};
}

int run_single(const TrackSet& s1, const TrackSet& s2, Method method,
               const RunParams& params) {
    if (s1.size() != s2.size() || s1.dim() != s2.dim())
        throw std::invalid_argument("run_single: track sets incompatible");
    if (method == Method::Full)
        return count_incorrect(solve_lap(build_full_matrix(s1, s2)));

    std::vector<ReducedEstimate> reduced;
    reduced.reserve(s2.size());
    for (int j = 0; j < s2.size(); ++j) {
        ReductionMap map = [&] {
            if (method == Method::FusionOpt)
                return fusion_optimal_reduction(s1[j].cov(), s2[j].cov(), params.m);
            if (params.m != 1)
                throw std::invalid_argument("run_single: association method is m = 1 only");
            return association_optimal_reduction(s2, j, params.bounds, params.k_max)
                .first;
        }();
        reduced.push_back(reduce_estimate(s2[j], map));
    }
    return count_incorrect(solve_lap(build_reduced_matrix(s1, reduced)));
}

McResult mc_sweep(const McConfig& cfg, const Scenario& s) {
    cfg.validate();
    s.validate();
    const RunParams params{s.m, cfg.bounds, cfg.k_max};
    const int num_c = static_cast<int>(cfg.c_grid.size());
    const int num_m = static_cast<int>(cfg.methods.size());
    std::vector<std::vector<std::vector<double>>> samples(
        num_m, std::vector<std::vector<double>>(num_c));

    for (int ci = 0; ci < num_c; ++ci) {
        const Scenario scaled = scale_spatial(s, cfg.c_grid[ci]);
        for (int run = 0; run < cfg.runs; ++run) {
            // Run substreams depend only on the run index, so realizations
            // are shared across methods and coupled across c values.
            SplitMix64 rng(derive_seed(cfg.seed, run));
            const auto [t1, t2] = sample_realization(scaled, rng);
            for (int mi = 0; mi < num_m; ++mi) {
                const int wrong = run_single(t1, t2, cfg.methods[mi], params);
                samples[mi][ci].push_back(static_cast<double>(wrong) / s.num_targets);
            }
        }
    }

    McResult result;
    result.cells.reserve(num_m * num_c);
    for (int mi = 0; mi < num_m; ++mi) {
        for (int ci = 0; ci < num_c; ++ci) {
            const std::vector<double>& vals = samples[mi][ci];
            double mean = 0.0;
            for (double v : vals) mean += v;
            mean /= vals.size();
            double var = 0.0;
            if (vals.size() > 1) {
                for (double v : vals) var += (v - mean) * (v - mean);
                var /= (vals.size() - 1);
            }
            result.cells.push_back(McCell{cfg.methods[mi], cfg.c_grid[ci], mean,
                                          std::sqrt(var),
                                          static_cast<int>(vals.size())});
        }
    }
    return result;
}

namespace {

// Two-target planar geometry with mirrored covariances. The agents measure
// complementary coordinates well, the targets sit on an oblique offset, and
// the correct/swapped pairing costs cross twice over the angle sweep.
struct PlanarStudy {
    Eigen::Matrix2d r1;
    Eigen::Matrix2d r2;
    Eigen::Vector2d y1a, y1b, y2a, y2b;
};

PlanarStudy planar_study() {
    PlanarStudy g;
    g.r1 = Eigen::Vector2d(0.75, 2.0).asDiagonal();
    g.r2 = Eigen::Vector2d(2.0, 0.75).asDiagonal();
    g.y1a = Eigen::Vector2d(-0.5, -1.0);
    g.y1b = Eigen::Vector2d(3.5, 1.0);
    g.y2a = Eigen::Vector2d(0.0, 1.0);
    g.y2b = Eigen::Vector2d(4.0, -1.0);
    return g;
}

}  // namespace

std::vector<MotivatingRow> motivating_example(const std::vector<double>& angles_deg) {
    const PlanarStudy g = planar_study();
    const Estimate e1a(g.y1a, g.r1, 0), e1b(g.y1b, g.r1, 1);
    const Estimate e2a(g.y2a, g.r2, 0), e2b(g.y2b, g.r2, 1);

    std::vector<MotivatingRow> rows;
    rows.reserve(angles_deg.size());
    for (double deg : angles_deg) {
        const double rad = deg * std::numbers::pi / 180.0;
        Eigen::RowVector2d direction(std::cos(rad), std::sin(rad));
        const ReductionMap map = ReductionMap::row(direction.transpose());
        const ReducedEstimate ra = reduce_estimate(e2a, map);
        const ReducedEstimate rb = reduce_estimate(e2b, map);
        MotivatingRow row;
        row.alpha_deg = deg;
        row.j0 = md_reduced(e1a, ra) + md_reduced(e1b, rb);
        row.je = md_reduced(e1a, rb) + md_reduced(e1b, ra);
        row.trace_p = fusion_loss(kalman_fuse(e1a, ra));
        rows.push_back(row);
    }
    return rows;
}

RealizationDemo realization_demo(std::uint64_t seed_a, std::uint64_t seed_b) {
    Scenario s;
    s.n = 2;
    s.m = 1;
    s.num_targets = 2;
    s.targets = {Eigen::Vector2d(0.0, 0.0), Eigen::Vector2d(4.0, 1.0)};
    s.cov1.assign(2, Eigen::Vector2d(1.0, 4.0).asDiagonal().toDenseMatrix());
    s.cov2.assign(2, Eigen::Vector2d(4.0, 1.0).asDiagonal().toDenseMatrix());

    const ReductionMap map = fusion_optimal_reduction(s.cov1[0], s.cov2[0], 1);
    auto realize = [&](std::uint64_t seed) {
        SplitMix64 rng(seed);
        const auto [t1, t2] = sample_realization(s, rng);
        std::vector<ReducedEstimate> reduced{reduce_estimate(t2[0], map),
                                             reduce_estimate(t2[1], map)};
        AssignmentMatrix mat = build_reduced_matrix(t1, reduced);
        Assignment sol = solve_lap(mat);
        return std::pair(std::move(mat), std::move(sol));
    };

    auto [mat_a, sol_a] = realize(seed_a);
    auto [mat_b, sol_b] = realize(seed_b);
    return RealizationDemo{std::move(mat_a), std::move(mat_b), std::move(sol_a),
                           std::move(sol_b)};
}

TrackSet optimizer_demo_tracks(std::uint64_t seed) {
    constexpr int kDim = 4;
    const Eigen::Vector2d anchors[3] = {{0.0, 0.0}, {4.0, 1.0}, {1.0, 5.0}};
    SplitMix64 rng(seed);
    std::vector<Estimate> tracks;
    tracks.reserve(3);
    for (int i = 0; i < 3; ++i) {
        Eigen::MatrixXd w(kDim, kDim);
        for (int r = 0; r < kDim; ++r)
            for (int c = 0; c < kDim; ++c) w(r, c) = rng.normal();
        const Eigen::MatrixXd cov =
            symmetrize(w * w.transpose() / kDim) +
            0.1 * Eigen::MatrixXd::Identity(kDim, kDim);
        Eigen::VectorXd mean = Eigen::VectorXd::Zero(kDim);
        mean.head<2>() = anchors[i];
        mean += sample_gaussian(Eigen::VectorXd::Zero(kDim), cov, rng);
        tracks.emplace_back(std::move(mean), cov, i);
    }
    return TrackSet(std::move(tracks), 2);
}

std::vector<Eigen::Vector2d> default_positions() {
    return {{0.0, 0.0}, {1.0, 10.0}, {5.0, 5.0},  {6.0, 12.0}, {9.0, 8.0},
            {11.0, 4.0}, {3.0, -1.0}, {8.0, -1.0}, {-2.0, 8.0}, {-3.0, 3.0}};
}

namespace {

// Covariance ensemble constants. Each track covariance ties the position
// block to the kinematic block through a shared coupling map plus a
// per-target twist along the rotated position vector. Any two tracks then
// share a direction in which their summed covariance collapses to roughly
// 2 * kPosCondFloor, and that direction lines up with the displacement
// between the two targets. Full-state distances stay sharp at every spatial
// scale while one-dimensional projections have to trade rival tracks off
// against each other.
constexpr double kPosCondFloor = 0.02;   // conditional position variance
constexpr double kKernelTwist = 0.3;     // per-target coupling twist gain
constexpr double kCouplingScale = 2.0;   // shared coupling magnitude
constexpr double kKinematicScale = 0.25; // kinematic block std scale
constexpr double kKinematicFloor = 0.01; // kinematic block variance floor

Eigen::MatrixXd ensemble_covariance(const Eigen::Vector2d& position,
                                    const Eigen::MatrixXd& coupling_base,
                                    const Eigen::VectorXd& twist_axis,
                                    SplitMix64& rng) {
    const int kin = static_cast<int>(twist_axis.size());
    Eigen::MatrixXd w(kin, kin);
    for (int r = 0; r < kin; ++r)
        for (int c = 0; c < kin; ++c) w(r, c) = rng.normal();
    Eigen::MatrixXd kin_cov =
        (kKinematicScale * kKinematicScale / kin) * (w * w.transpose()) +
        kKinematicFloor * Eigen::MatrixXd::Identity(kin, kin);

    const Eigen::Vector2d rotated(-position.y(), position.x());
    const Eigen::MatrixXd coupling =
        coupling_base + kKernelTwist * rotated * twist_axis.transpose();

    Eigen::MatrixXd cov(2 + kin, 2 + kin);
    cov.topLeftCorner(2, 2) =
        kPosCondFloor * Eigen::Matrix2d::Identity() +
        coupling * kin_cov * coupling.transpose();
    cov.topRightCorner(2, kin) = coupling * kin_cov;
    cov.bottomLeftCorner(kin, 2) = cov.topRightCorner(2, kin).transpose();
    cov.bottomRightCorner(kin, kin) = kin_cov;
    return symmetrize(cov);
}

}  // namespace

Scenario generate_scenario(const ScenarioSpec& spec) {
    std::vector<Eigen::Vector2d> positions =
        spec.positions.empty() ? default_positions() : spec.positions;
    if (static_cast<int>(positions.size()) != spec.num_targets)
        throw std::invalid_argument("generate_scenario: position count mismatch");
    if (spec.n < 3)
        throw std::invalid_argument("generate_scenario: need n >= 3 for the ensemble");
    if (spec.m < 1 || spec.m > spec.n)
        throw std::invalid_argument("generate_scenario: bad reduction dimension");
    for (std::size_t i = 0; i < positions.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (positions[i] == positions[j])
                throw std::invalid_argument("generate_scenario: duplicate positions");

    const int kin = spec.n - 2;
    SplitMix64 rng(spec.cov_seed);
    Eigen::VectorXd twist_axis = rng.normal_vector(kin);
    const double axis_norm = twist_axis.norm();
    if (axis_norm <= 0.0)
        throw NumericError("generate_scenario: degenerate twist axis");
    twist_axis /= axis_norm;
    Eigen::MatrixXd coupling_base(2, kin);
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < kin; ++c)
            coupling_base(r, c) = kCouplingScale * rng.normal();

    Scenario s;
    s.n = spec.n;
    s.m = spec.m;
    s.num_targets = spec.num_targets;
    s.targets.reserve(positions.size());
    for (const Eigen::Vector2d& p : positions) {
        Eigen::VectorXd x = Eigen::VectorXd::Zero(spec.n);
        x.head<2>() = p;
        s.targets.push_back(std::move(x));
    }
    for (const Eigen::Vector2d& p : positions)
        s.cov1.push_back(ensemble_covariance(p, coupling_base, twist_axis, rng));
    for (const Eigen::Vector2d& p : positions)
        s.cov2.push_back(ensemble_covariance(p, coupling_base, twist_axis, rng));
    s.validate();
    return s;
}

}  // namespace dratta
