#include "hsc/hypergraph.hpp"

#include <algorithm>
#include <numeric>

namespace hsc {

Hyperedge canonical_edge(std::span<const NodeId> nodes, std::uint32_t n, std::uint32_t d) {
    if (nodes.size() != d) {
        throw BadEdgeSize("edge has " + std::to_string(nodes.size()) + " nodes, expected " +
                          std::to_string(d));
    }
    Hyperedge e;
    e.nodes.assign(nodes.begin(), nodes.end());
    std::sort(e.nodes.begin(), e.nodes.end());
    for (std::size_t i = 0; i < e.nodes.size(); ++i) {
        if (e.nodes[i] < 1 || e.nodes[i] > n) {
            throw NodeOutOfRange("node id " + std::to_string(e.nodes[i]) + " outside [1, " +
                                 std::to_string(n) + "]");
        }
        if (i > 0 && e.nodes[i] == e.nodes[i - 1]) {
            throw DuplicateNode("duplicate node id " + std::to_string(e.nodes[i]));
        }
    }
    return e;
}

WeightedHypergraph::WeightedHypergraph(std::uint32_t n, std::uint32_t d) : n_(n), d_(d) {
    if (d < 2) throw InvalidParams("edge size d must be >= 2");
    if (n < d) throw InvalidParams("need n >= d");
}

void WeightedHypergraph::add_edge(std::span<const NodeId> nodes, double weight, bool observed) {
    if (frozen_) throw InvalidParams("hypergraph is frozen");
    if (weight < 0.0 || weight > 1.0) {
        throw WeightOutOfRange("weight " + std::to_string(weight) + " outside [0, 1]");
    }
    Hyperedge e = canonical_edge(nodes, n_, d_);
    nodes_.insert(nodes_.end(), e.nodes.begin(), e.nodes.end());
    weights_.push_back(weight);
    if (!observed && observed_.empty()) observed_.assign(weights_.size() - 1, 1);
    if (!observed_.empty() || !observed) observed_.push_back(observed ? 1 : 0);
}

void WeightedHypergraph::freeze() {
    if (frozen_) return;
    const std::size_t m = weights_.size();
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    auto cmp = [&](std::size_t a, std::size_t b) {
        return std::lexicographical_compare(nodes_.begin() + a * d_, nodes_.begin() + (a + 1) * d_,
                                            nodes_.begin() + b * d_, nodes_.begin() + (b + 1) * d_);
    };
    const bool sorted = std::is_sorted(order.begin(), order.end(), cmp);
    if (!sorted) {
        std::sort(order.begin(), order.end(), cmp);
        std::vector<NodeId> nodes(nodes_.size());
        std::vector<double> weights(m);
        std::vector<std::uint8_t> observed(observed_.empty() ? 0 : m);
        for (std::size_t i = 0; i < m; ++i) {
            std::copy_n(nodes_.begin() + order[i] * d_, d_, nodes.begin() + i * d_);
            weights[i] = weights_[order[i]];
            if (!observed_.empty()) observed[i] = observed_[order[i]];
        }
        nodes_.swap(nodes);
        weights_.swap(weights);
        observed_.swap(observed);
    }
    for (std::size_t i = 1; i < m; ++i) {
        if (std::equal(nodes_.begin() + (i - 1) * d_, nodes_.begin() + i * d_,
                       nodes_.begin() + i * d_)) {
            throw InvalidParams("duplicate edge in hypergraph");
        }
    }
    frozen_ = true;
}

std::optional<std::size_t> WeightedHypergraph::find(std::span<const NodeId> canonical) const {
    const std::size_t m = weights_.size();
    std::size_t lo = 0, hi = m;
    while (lo < hi) {
        const std::size_t mid = (lo + hi) / 2;
        const auto begin = nodes_.begin() + mid * d_;
        if (std::lexicographical_compare(begin, begin + d_, canonical.begin(), canonical.end())) {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    if (lo < m && std::equal(canonical.begin(), canonical.end(), nodes_.begin() + lo * d_)) {
        return lo;
    }
    return std::nullopt;
}

double WeightedHypergraph::weight_of(std::span<const NodeId> canonical) const {
    auto idx = find(canonical);
    if (!idx || !observed(*idx)) return 0.0;
    return weights_[*idx];
}

bool WeightedHypergraph::operator==(const WeightedHypergraph& other) const {
    if (n_ != other.n_ || d_ != other.d_ || weights_.size() != other.weights_.size()) return false;
    if (nodes_ != other.nodes_ || weights_ != other.weights_) return false;
    const std::size_t m = weights_.size();
    for (std::size_t i = 0; i < m; ++i) {
        if (observed(i) != other.observed(i)) return false;
    }
    return true;
}

void Partition::validate() const {
    if (k < 1) throw InvalidPartition("group count k must be >= 1");
    for (std::uint32_t lab : labels) {
        if (lab < 1 || lab > k) {
            throw InvalidPartition("label " + std::to_string(lab) + " outside [1, " +
                                   std::to_string(k) + "]");
        }
    }
}

std::vector<std::uint32_t> Partition::group_sizes() const {
    std::vector<std::uint32_t> sizes(k, 0);
    for (std::uint32_t lab : labels) ++sizes[lab - 1];
    return sizes;
}

} // namespace hsc
