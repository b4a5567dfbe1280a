#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

#include <Eigen/Cholesky>
#include <Eigen/Core>

namespace dratta {

/// Counter-based pseudo-random generator (SplitMix64, Vigna/Steele et al.).
/// The k-th output is a fixed mix of seed + k * 0x9E3779B97F4A7C15, so streams
/// are cheap to seed, to split, and to reproduce. All Gaussian sampling in the
/// simulator goes through this generator; given the same seed the draw
/// sequence is identical on every run.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1), 53 random bits.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Standard normal via Box-Muller; draws two uniforms per pair and caches
    /// the sine branch. u1 is shifted into (0, 1] so log never sees zero.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double t = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(t);
        has_spare_ = true;
        return r * std::cos(t);
    }

    /// Vector of iid standard normals, coordinate order.
    Eigen::VectorXd normal_vector(Eigen::Index n) {
        Eigen::VectorXd z(n);
        for (Eigen::Index i = 0; i < n; ++i) z(i) = normal();
        return z;
    }

private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

/// Deterministic sub-stream seed for (seed, index), e.g. one per MC run.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    SplitMix64 g(seed + (index + 1) * 0x9E3779B97F4A7C15ULL);
    return g.next_u64();
}

/// Draw x ~ N(mean, cov) as mean + L z with L the lower Cholesky factor.
inline Eigen::VectorXd sample_gaussian(const Eigen::VectorXd& mean,
                                       const Eigen::MatrixXd& cov, SplitMix64& rng) {
    Eigen::LLT<Eigen::MatrixXd> llt(cov);
    return mean + llt.matrixL() * rng.normal_vector(mean.size());
}

}  // namespace dratta
