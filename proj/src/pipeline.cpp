#include "hsc/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "hsc/combinatorics.hpp"
#include "hsc/rng.hpp"

namespace hsc {

namespace {

double now_ms() {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

// Nodes of `nodes` whose removal leaves a single label, with that label.
// Appends (node index within the edge, label) pairs to `out`.
void monochromatic_complements(std::span<const NodeId> nodes, const Partition& phi,
                               std::vector<std::pair<std::uint32_t, std::uint32_t>>& out) {
    out.clear();
    const std::uint32_t d = static_cast<std::uint32_t>(nodes.size());
    // Label multiplicities over the edge (k is small; use two passes).
    std::uint32_t first_label = phi.labels[nodes[0] - 1];
    std::uint32_t second_label = 0;
    std::uint32_t first_count = 0, second_count = 0;
    bool more_than_two = false;
    for (NodeId v : nodes) {
        const std::uint32_t lab = phi.labels[v - 1];
        if (lab == first_label) {
            ++first_count;
        } else if (second_count == 0 || lab == second_label) {
            second_label = lab;
            ++second_count;
        } else {
            more_than_two = true;
            break;
        }
    }
    if (more_than_two) return;
    if (second_count == 0) {
        for (std::uint32_t i = 0; i < d; ++i) out.emplace_back(i, first_label);
        return;
    }
    if (first_count == 1) {
        for (std::uint32_t i = 0; i < d; ++i) {
            if (phi.labels[nodes[i] - 1] == first_label) out.emplace_back(i, second_label);
        }
    }
    if (second_count == 1) {
        for (std::uint32_t i = 0; i < d; ++i) {
            if (phi.labels[nodes[i] - 1] == second_label) out.emplace_back(i, first_label);
        }
    }
}

} // namespace

void HscConfig::validate() const {
    if (k < 2) throw InvalidParams("k must be >= 2");
    if (restarts < 1) throw InvalidParams("restarts must be >= 1");
}

void HsclrConfig::validate() const {
    hsc.validate();
    if (beta != 0.0 && !(beta > 0.0 && beta < 1.0)) {
        throw InvalidParams("beta must lie in (0,1)");
    }
}

double HsclrConfig::resolved_beta(std::uint32_t n) const {
    if (beta > 0.0) return beta;
    const double ln = std::log(std::max<double>(n, 3));
    return std::clamp(std::log(ln) / ln, 0.05, 0.5);
}

PipelineResult run_hsc(const WeightedHypergraph& h, const HscConfig& cfg, std::uint64_t seed) {
    cfg.validate();
    PipelineResult result;
    double t0 = now_ms();
    const SimilarityMatrix a = similarity_matrix(h);
    TrimResult trimmed = trim(a, cfg.c_thr > 0.0 ? cfg.c_thr : default_c_thr(h.edge_size()));
    result.trimmed = std::move(trimmed.removed);
    double t1 = now_ms();
    const Embedding emb = top_k_eigenvectors(trimmed.matrix, cfg.k, cfg.eigen_mode);
    double t2 = now_ms();
    ClusterResult clusters = cluster_rows(emb.vectors, cfg.k, cfg.restarts, seed);
    double t3 = now_ms();
    result.partition = std::move(clusters.partition);
    result.timings.build_ms = t1 - t0;
    result.timings.eigen_ms = t2 - t1;
    result.timings.kmeans_ms = t3 - t2;
    return result;
}

std::pair<WeightedHypergraph, WeightedHypergraph> split_edges(const WeightedHypergraph& h,
                                                              double beta, std::uint64_t seed) {
    if (!(beta >= 0.0 && beta <= 1.0)) throw InvalidParams("beta must lie in [0,1]");
    WeightedHypergraph h1(h.node_count(), h.edge_size());
    WeightedHypergraph h2(h.node_count(), h.edge_size());
    const Rng base(seed);
    for (std::size_t e = 0; e < h.stored_edge_count(); ++e) {
        const auto nodes = h.edge_nodes(e);
        const bool to_first = base.fork(edge_key(nodes)).next_double() < beta;
        (to_first ? h1 : h2).add_edge(nodes, h.weight(e), h.observed(e));
    }
    h1.freeze();
    h2.freeze();
    return {std::move(h1), std::move(h2)};
}

Partition refine(const WeightedHypergraph& h2, const Partition& phi, std::uint32_t k,
                 RefineDenominator denom) {
    phi.validate();
    if (phi.k != k) throw InvalidParams("partition group count mismatch");
    const std::uint32_t n = phi.n();
    const std::uint32_t d = h2.edge_size();

    // Numerators (and, for censored data, per-pair observed-edge counts).
    Eigen::MatrixXd num = Eigen::MatrixXd::Zero(n, k);
    Eigen::MatrixXd observed_count;
    if (denom == RefineDenominator::ObservedOnly) {
        observed_count = Eigen::MatrixXd::Zero(n, k);
    }
    std::vector<std::pair<std::uint32_t, std::uint32_t>> hits;
    for (std::size_t e = 0; e < h2.stored_edge_count(); ++e) {
        if (!h2.observed(e)) continue;
        const auto nodes = h2.edge_nodes(e);
        monochromatic_complements(nodes, phi, hits);
        for (const auto& [idx, label] : hits) {
            num(nodes[idx] - 1, label - 1) += h2.weight(e);
            if (denom == RefineDenominator::ObservedOnly) {
                observed_count(nodes[idx] - 1, label - 1) += 1.0;
            }
        }
    }

    const std::vector<std::uint32_t> sizes = phi.group_sizes();
    Partition out = phi;
    for (std::uint32_t i = 0; i < n; ++i) {
        const std::uint32_t current = phi.labels[i];
        double best = -1.0;
        std::uint32_t best_label = current;
        bool any = false;
        for (std::uint32_t j = 1; j <= k; ++j) {
            double denom_value;
            if (denom == RefineDenominator::ObservedOnly) {
                denom_value = observed_count(i, j - 1);
            } else {
                const std::uint32_t avail = sizes[j - 1] - (current == j ? 1 : 0);
                denom_value = binom(avail, d - 1);
            }
            if (denom_value <= 0.0) continue; // no candidate edges toward j
            const double avg = num(i, j - 1) / denom_value;
            // Ties keep the current label when it attains the max,
            // otherwise the lowest group index wins (first j seen).
            if (!any || avg > best || (avg == best && j == current)) {
                best = avg;
                best_label = j;
            }
            any = true;
        }
        out.labels[i] = best_label;
    }
    return out;
}

PipelineResult run_hsclr(const WeightedHypergraph& h, const HsclrConfig& cfg, std::uint64_t seed,
                     RefineDenominator denom) {
    cfg.validate();
    const double beta = cfg.resolved_beta(h.node_count());
    auto [h1, h2] = split_edges(h, beta, hash_combine(seed, 0x73706c69));
    PipelineResult result = run_hsc(h1, cfg.hsc, hash_combine(seed, 0x687363));
    const double t0 = now_ms();
    result.partition = refine(h2, result.partition, cfg.hsc.k, denom);
    result.timings.refine_ms = now_ms() - t0;
    return result;
}

std::uint64_t hamming_objective(const WeightedHypergraph& h, const Partition& x) {
    x.validate();
    if (x.k != 2) throw InvalidParams("hamming objective requires k = 2");
    if (x.n() != h.node_count()) throw ShapeMismatch("partition size mismatch");
    std::uint64_t mismatches = 0;
    for (std::size_t e = 0; e < h.stored_edge_count(); ++e) {
        if (!h.observed(e)) continue;
        const double w = h.weight(e);
        if (w != 0.0 && w != 1.0) throw InvalidWeights("observed weights must be binary");
        const auto nodes = h.edge_nodes(e);
        const std::uint32_t lab = x.labels[nodes[0] - 1];
        bool mono = true;
        for (NodeId v : nodes) {
            if (x.labels[v - 1] != lab) {
                mono = false;
                break;
            }
        }
        if ((mono ? 1.0 : 0.0) != w) ++mismatches;
    }
    return mismatches;
}

Partition ml_refine_cbm(const WeightedHypergraph& h, const Partition& x) {
    x.validate();
    if (x.k != 2) throw InvalidParams("likelihood refinement requires k = 2");
    if (x.n() != h.node_count()) throw ShapeMismatch("partition size mismatch");
    const std::uint32_t n = x.n();

    // delta[i] = objective(x flip i) - objective(x); only edges whose
    // complement around i is monochromatic can change the indicator.
    std::vector<std::int64_t> delta(n, 0);
    std::vector<std::pair<std::uint32_t, std::uint32_t>> hits;
    for (std::size_t e = 0; e < h.stored_edge_count(); ++e) {
        if (!h.observed(e)) continue;
        const double w = h.weight(e);
        if (w != 0.0 && w != 1.0) throw InvalidWeights("observed weights must be binary");
        const auto nodes = h.edge_nodes(e);
        monochromatic_complements(nodes, x, hits);
        for (const auto& [idx, label] : hits) {
            const NodeId node = nodes[idx];
            const double f = x.labels[node - 1] == label ? 1.0 : 0.0;
            // Flipping node toggles f on this edge.
            delta[node - 1] += (f == w) ? 1 : -1;
        }
    }
    Partition out = x;
    for (std::uint32_t i = 0; i < n; ++i) {
        if (delta[i] <= 0) out.labels[i] = 3 - x.labels[i];
    }
    return out;
}

PipelineResult run_hsclr_ml(const WeightedHypergraph& h, const HsclrConfig& cfg, std::uint64_t seed) {
    cfg.validate();
    if (cfg.hsc.k != 2) throw InvalidParams("likelihood pipeline requires k = 2");
    // The likelihood rule scores against the full observation set, so the
    // spectral initializer also sees the full graph: splitting would
    // starve it at the sparse observation rates this pipeline targets.
    PipelineResult result = run_hsc(h, cfg.hsc, hash_combine(seed, 0x687363));
    const double t0 = now_ms();
    // Local search on the Hamming objective: iterate the simultaneous
    // pass until it reaches a fixed point (or a generous pass cap, since
    // simultaneous flips can in principle cycle).
    for (std::uint32_t pass = 0; pass < 50; ++pass) {
        Partition next = ml_refine_cbm(h, result.partition);
        const bool done = next.labels == result.partition.labels;
        result.partition = std::move(next);
        if (done) break;
    }
    result.timings.refine_ms = now_ms() - t0;
    return result;
}

} // namespace hsc
