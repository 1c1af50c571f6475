#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "hsc/hypergraph.hpp"

namespace hsc {

enum class WeightKind {
    Bernoulli,      // W in {0,1}, mean p*alpha / q*alpha
    UniformMixture, // with prob alpha, uniform on [0,2p] / [0,2q], else 0
};

/// Generative configuration of the weighted block model.
struct SbmParams {
    std::uint32_t n = 0;
    std::uint32_t d = 2;
    std::uint32_t k = 2;
    std::vector<std::uint32_t> cluster_sizes;
    double p = 0.5;
    double q = 0.25;
    double alpha = 1.0;
    WeightKind weight_kind = WeightKind::Bernoulli;
    bool assortative = true;
    // Asymmetric variant: per-group homogeneous mean parameters that
    // override p. Each must exceed q (assortative) or fall below q
    // (disassortative); validated in validate().
    std::vector<double> hom_means;

    double hom_mean(std::uint32_t group) const {
        return hom_means.empty() ? p : hom_means[group - 1];
    }

    void validate() const;
    Partition ground_truth() const; // first cluster_sizes[0] nodes -> 1, etc.
};

/// Binary censored model with erasures, k fixed at 2.
struct CbmParams {
    std::uint32_t n = 0;
    std::uint32_t d = 2;
    double theta = 0.1; // corruption rate, in (0, 1/2)
    double alpha = 1.0; // observation rate

    void validate() const;
};

struct SubspaceParams {
    std::uint32_t k = 2;           // subspace count
    std::uint32_t m = 1;           // subspace dimension
    std::uint32_t ell = 2;         // ambient dimension
    std::uint32_t points_per_cluster = 10;
    double sigma = 0.0;            // per-coordinate Gaussian noise std
    std::uint32_t d = 3;           // edge size, >= m + 2
    double s_n = 1.0;              // edge sampling probability
    double tau = 0.0;              // fitting scale; 0 = data-adaptive, half the
                                   // (median - 10th pct) spread of sketch fits
    bool affine_offset = false;    // add a random translation per subspace

    void validate() const;
    std::uint32_t n() const { return k * points_per_cluster; }
    double fitting_scale() const;
};

struct PointCloud {
    std::vector<Eigen::VectorXd> points;
};

// Edge enumeration switches to binomial counts + rejection sampling
// above this many candidate edges.
inline constexpr double kEnumerationBudget = 1e8;

/// Weighted SBM sampler. Deterministic in (params, seed); per-edge
/// randomness is keyed by (seed, edge).
std::pair<WeightedHypergraph, Partition> sample_weighted_sbm(const SbmParams& params,
                                                             std::uint64_t seed);

/// Censored model sampler: stores every observed edge (weights in {0,1},
/// including observed zeros) and omits erased ones.
WeightedHypergraph sample_censored_bm(const CbmParams& params, const Partition& truth,
                                      std::uint64_t seed);

std::pair<WeightedHypergraph, Partition> sample_planted_clique(std::uint32_t n, std::uint32_t d,
                                                               std::uint32_t s,
                                                               std::uint64_t seed);

std::pair<PointCloud, Partition> sample_subspace_points(const SubspaceParams& params,
                                                        std::uint64_t seed);

/// RMS-scaled residual of the best m-dimensional affine flat through the
/// given points: sqrt(sum of squared residuals / d).
double fitting_residual(const std::vector<Eigen::VectorXd>& pts, std::uint32_t m);

/// exp(-fitting_residual / tau), tau > 0.
double fitting_weight(const std::vector<Eigen::VectorXd>& pts, std::uint32_t m, double tau);

/// Keeps each of the C(n,d) edges independently with probability s_n and
/// weights it by the affine fitting error of its points.
WeightedHypergraph sketch_hypergraph(const PointCloud& cloud, const SubspaceParams& params,
                                     std::uint64_t seed);

} // namespace hsc
