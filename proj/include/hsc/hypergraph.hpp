#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "hsc/errors.hpp"

namespace hsc {

using NodeId = std::uint32_t; // 1-based, matching the file format

/// A canonical hyperedge: d distinct node ids in strictly increasing order.
struct Hyperedge {
    std::vector<NodeId> nodes;

    bool operator==(const Hyperedge&) const = default;
    auto operator<=>(const Hyperedge&) const = default;
};

/// Sorts and validates a node sequence into canonical form.
/// Throws DuplicateNode / NodeOutOfRange / BadEdgeSize.
Hyperedge canonical_edge(std::span<const NodeId> nodes, std::uint32_t n, std::uint32_t d);

/// Sparse d-uniform weighted hypergraph. Only stored edges carry weight;
/// an absent edge reads as weight 0. A stored edge may be flagged
/// unobserved (an explicit erasure of the censored model), which is
/// distinct from an observed weight of 0.
///
/// Edges live in one flat buffer (d node ids per edge, lexicographically
/// sorted after freeze()); the container is immutable once frozen.
class WeightedHypergraph {
public:
    WeightedHypergraph(std::uint32_t n, std::uint32_t d);

    std::uint32_t node_count() const { return n_; }
    std::uint32_t edge_size() const { return d_; }
    std::size_t stored_edge_count() const { return weights_.size(); }

    /// Appends an edge (nodes need not be sorted). Only valid before freeze().
    void add_edge(std::span<const NodeId> nodes, double weight, bool observed = true);

    /// Sorts edges lexicographically and rejects duplicates. Idempotent.
    void freeze();
    bool frozen() const { return frozen_; }

    std::span<const NodeId> edge_nodes(std::size_t idx) const {
        return {nodes_.data() + idx * d_, d_};
    }
    double weight(std::size_t idx) const { return weights_[idx]; }
    bool observed(std::size_t idx) const { return observed_.empty() || observed_[idx] != 0; }
    bool has_erasures() const { return !observed_.empty(); }

    /// Index of a canonical edge among the stored edges, if present.
    std::optional<std::size_t> find(std::span<const NodeId> canonical) const;

    /// Weight of an edge, 0 if absent. Unobserved edges also read 0 here.
    double weight_of(std::span<const NodeId> canonical) const;

    bool operator==(const WeightedHypergraph& other) const;

private:
    std::uint32_t n_;
    std::uint32_t d_;
    std::vector<NodeId> nodes_;      // flat, d per edge
    std::vector<double> weights_;
    std::vector<std::uint8_t> observed_; // empty means "all observed"
    bool frozen_ = false;
};

/// Label assignment [n] -> [k], labels 1-based.
struct Partition {
    std::vector<std::uint32_t> labels;
    std::uint32_t k = 0;

    std::uint32_t n() const { return static_cast<std::uint32_t>(labels.size()); }
    void validate() const;
    std::vector<std::uint32_t> group_sizes() const;

    bool operator==(const Partition&) const = default;
};

} // namespace hsc
