#pragma once

#include <cstdint>
#include <utility>

#include "hsc/hypergraph.hpp"
#include "hsc/spectral.hpp"

namespace hsc {

struct HscConfig {
    std::uint32_t k = 2;
    double c_thr = 0.0; // <= 0 means the d-dependent default
    std::uint32_t restarts = 5;
    EigenMode eigen_mode = EigenMode::Assortative;

    void validate() const;
};

struct HsclrConfig {
    HscConfig hsc;
    double beta = 0.0; // <= 0 means log log n / log n, clipped to [0.05, 0.5]

    void validate() const;
    double resolved_beta(std::uint32_t n) const;
};

struct StageTimings {
    double build_ms = 0.0;
    double eigen_ms = 0.0;
    double kmeans_ms = 0.0;
    double refine_ms = 0.0;
};

struct PipelineResult {
    Partition partition;
    StageTimings timings;
    std::vector<NodeId> trimmed;
};

/// Algorithm: similarity matrix -> trim -> top-k eigenvectors -> k-means
/// on the embedding rows. Trimmed nodes keep their zero embedding row and
/// land in the cluster with the nearest center.
PipelineResult run_hsc(const WeightedHypergraph& h, const HscConfig& cfg, std::uint64_t seed);

/// Bernoulli split of the stored edges: each goes to H1 with probability
/// beta, else to H2. Deterministic in (seed, edge).
std::pair<WeightedHypergraph, WeightedHypergraph> split_edges(const WeightedHypergraph& h,
                                                              double beta, std::uint64_t seed);

enum class RefineDenominator {
    AllCandidateEdges, // absent edges count as weight-0 observations
    ObservedOnly,      // censored data: absent edges are erasures
};

/// One simultaneous local-refinement pass: each node moves to the group
/// maximizing the average held-out edge weight toward that group. All
/// decisions are made against the input partition.
Partition refine(const WeightedHypergraph& h2, const Partition& phi, std::uint32_t k,
                 RefineDenominator denom = RefineDenominator::AllCandidateEdges);

/// HSC on the beta-split H1, then one refinement pass on H2.
PipelineResult run_hsclr(const WeightedHypergraph& h, const HsclrConfig& cfg, std::uint64_t seed,
                     RefineDenominator denom = RefineDenominator::AllCandidateEdges);

/// Number of observed binary edges whose homogeneity indicator disagrees
/// with the stored weight. Erased edges are excluded.
std::uint64_t hamming_objective(const WeightedHypergraph& h, const Partition& x);

/// Likelihood refinement for the censored model: flip node i unless the
/// objective of the input labeling strictly beats the flipped one. One
/// simultaneous pass.
Partition ml_refine_cbm(const WeightedHypergraph& h, const Partition& x);

/// Censored-model pipeline: HSC on the full graph (erasures read as
/// weight 0), then ml_refine_cbm iterated to a fixed point.
PipelineResult run_hsclr_ml(const WeightedHypergraph& h, const HsclrConfig& cfg, std::uint64_t seed);

} // namespace hsc
