#include "hsc/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>

#include <Eigen/QR>
#include <Eigen/SVD>

#include "hsc/combinatorics.hpp"
#include "hsc/rng.hpp"

namespace hsc {

namespace {

// Visits all d-subsets of [1, n] in lexicographic order.
template <typename F>
void for_each_combination(std::uint32_t n, std::uint32_t d, F&& f) {
    std::vector<NodeId> c(d);
    std::iota(c.begin(), c.end(), 1u);
    while (true) {
        f(std::span<const NodeId>(c));
        std::int32_t i = static_cast<std::int32_t>(d) - 1;
        while (i >= 0 && c[i] == n - (d - 1 - i)) --i;
        if (i < 0) break;
        ++c[i];
        for (std::uint32_t j = i + 1; j < d; ++j) c[j] = c[j - 1] + 1;
    }
}

// Binomial draw via the normal approximation; only used on the
// rejection path where the trial count is far too large to enumerate
// and the mean is in the thousands or more.
std::uint64_t approx_binomial(Rng& rng, double trials, double prob) {
    if (prob <= 0.0 || trials <= 0.0) return 0;
    if (prob >= 1.0) return static_cast<std::uint64_t>(trials);
    const double mean = trials * prob;
    const double sd = std::sqrt(trials * prob * (1.0 - prob));
    const double v = std::round(mean + sd * rng.next_gaussian());
    return static_cast<std::uint64_t>(std::clamp(v, 0.0, trials));
}

// d distinct ids uniform on [lo, hi], sorted.
std::vector<NodeId>& sample_subset(Rng& rng, NodeId lo, NodeId hi, std::uint32_t d,
                                   std::vector<NodeId>& scratch) {
    scratch.clear();
    const std::uint64_t range = hi - lo + 1;
    while (scratch.size() < d) {
        const NodeId v = lo + static_cast<NodeId>(rng.next_below(range));
        if (std::find(scratch.begin(), scratch.end(), v) == scratch.end()) scratch.push_back(v);
    }
    std::sort(scratch.begin(), scratch.end());
    return scratch;
}

bool homogeneous(std::span<const NodeId> nodes, const Partition& truth, std::uint32_t* group) {
    const std::uint32_t g = truth.labels[nodes[0] - 1];
    for (NodeId v : nodes) {
        if (truth.labels[v - 1] != g) return false;
    }
    *group = g;
    return true;
}

} // namespace

void SbmParams::validate() const {
    if (k < 1 || d < 2 || n < d) throw InvalidParams("bad n/d/k");
    if (cluster_sizes.size() != k) throw InvalidParams("cluster_sizes must have k entries");
    std::uint64_t total = 0;
    for (std::uint32_t s : cluster_sizes) {
        if (s < d) throw InvalidParams("every cluster must have at least d nodes");
        total += s;
    }
    if (total != n) throw InvalidParams("cluster sizes must sum to n");
    if (!(p > 0.0 && p <= 1.0)) throw InvalidParams("p must lie in (0,1]");
    if (!(q >= 0.0 && q <= 1.0)) throw InvalidParams("q must lie in [0,1]");
    if (!(alpha > 0.0 && alpha <= 1.0)) throw InvalidParams("alpha must lie in (0,1]");
    if (p * alpha > 1.0 || q * alpha > 1.0) throw InvalidParams("edge means must stay within [0,1]");
    if (!hom_means.empty() && hom_means.size() != k) {
        throw InvalidParams("hom_means must have k entries when supplied");
    }
    for (std::uint32_t g = 1; g <= k; ++g) {
        const double ph = hom_mean(g);
        if (!(ph > 0.0 && ph <= 1.0) || ph * alpha > 1.0) {
            throw InvalidParams("homogeneous mean out of range");
        }
        if (assortative && !(ph > q)) {
            throw InvalidParams("assortative model requires every homogeneous mean > q");
        }
        if (!assortative && !(ph < q)) {
            throw InvalidParams("disassortative model requires every homogeneous mean < q");
        }
        if (weight_kind == WeightKind::UniformMixture && 2.0 * ph > 1.0) {
            throw InvalidParams("uniform-mixture weights need 2p <= 1");
        }
    }
    if (weight_kind == WeightKind::UniformMixture && 2.0 * q > 1.0) {
        throw InvalidParams("uniform-mixture weights need 2q <= 1");
    }
}

Partition SbmParams::ground_truth() const {
    Partition psi;
    psi.k = k;
    psi.labels.reserve(n);
    for (std::uint32_t g = 1; g <= k; ++g) {
        psi.labels.insert(psi.labels.end(), cluster_sizes[g - 1], g);
    }
    return psi;
}

void CbmParams::validate() const {
    if (d < 2 || n < d) throw InvalidParams("bad n/d");
    if (!(theta > 0.0 && theta < 0.5)) throw InvalidParams("theta must lie in (0, 1/2)");
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw InvalidParams("alpha must lie in [0,1]");
}

void SubspaceParams::validate() const {
    if (m >= ell) throw InvalidParams("subspace dimension m must be below ambient dimension");
    if (d < m + 2) throw InvalidParams("edge size d must be at least m+2");
    if (k < 1 || points_per_cluster < 1) throw InvalidParams("bad k / points_per_cluster");
    if (sigma < 0.0) throw InvalidParams("sigma must be nonnegative");
    if (!(s_n >= 0.0 && s_n <= 1.0)) throw InvalidParams("s_n must lie in [0,1]");
}

double SubspaceParams::fitting_scale() const {
    // 0 signals the data-adaptive scale; see sketch_hypergraph.
    return tau > 0.0 ? tau : 0.0;
}

std::pair<WeightedHypergraph, Partition> sample_weighted_sbm(const SbmParams& params,
                                                             std::uint64_t seed) {
    params.validate();
    const Partition truth = params.ground_truth();
    WeightedHypergraph h(params.n, params.d);
    const Rng base(seed);
    const double total_edges = binom(params.n, params.d);

    auto draw_weight = [&](Rng& rng, double mean_param) -> double {
        // Returns the sampled weight, 0 meaning "not stored".
        if (params.weight_kind == WeightKind::Bernoulli) {
            return rng.next_double() < mean_param * params.alpha ? 1.0 : 0.0;
        }
        if (rng.next_double() < params.alpha) {
            return rng.next_double() * 2.0 * mean_param;
        }
        return 0.0;
    };

    if (total_edges <= kEnumerationBudget) {
        for_each_combination(params.n, params.d, [&](std::span<const NodeId> nodes) {
            std::uint32_t group = 0;
            const double mean_param =
                homogeneous(nodes, truth, &group) ? params.hom_mean(group) : params.q;
            Rng rng = base.fork(edge_key(nodes));
            const double w = draw_weight(rng, mean_param);
            if (w > 0.0) h.add_edge(nodes, w);
        });
        h.freeze();
        return {std::move(h), truth};
    }

    // Rejection path: per-class binomial counts, then distinct edges by
    // rejection. Classes: homogeneous-in-group-j for each j, plus one
    // heterogeneous class.
    const double incl_het = params.weight_kind == WeightKind::Bernoulli
                                ? params.q * params.alpha
                                : params.alpha;
    double expected = 0.0;
    double het_edges = total_edges;
    for (std::uint32_t g = 1; g <= params.k; ++g) {
        const double class_edges = binom(params.cluster_sizes[g - 1], params.d);
        het_edges -= class_edges;
        const double incl = params.weight_kind == WeightKind::Bernoulli
                                ? params.hom_mean(g) * params.alpha
                                : params.alpha;
        expected += class_edges * incl;
    }
    expected += het_edges * incl_het;
    if (expected > kEnumerationBudget) {
        throw BudgetExceeded("expected stored edge count exceeds the sampling budget");
    }

    std::unordered_set<std::uint64_t> seen;
    std::vector<NodeId> scratch;
    NodeId offset = 0;
    for (std::uint32_t g = 1; g <= params.k; ++g) {
        const std::uint32_t size = params.cluster_sizes[g - 1];
        const double incl = params.weight_kind == WeightKind::Bernoulli
                                ? params.hom_mean(g) * params.alpha
                                : params.alpha;
        Rng rng = base.fork(hash_combine(0x686f6d, g));
        const std::uint64_t count = approx_binomial(rng, binom(size, params.d), incl);
        for (std::uint64_t t = 0; t < count;) {
            auto& nodes = sample_subset(rng, offset + 1, offset + size, params.d, scratch);
            if (!seen.insert(edge_key(nodes)).second) continue;
            const double w = params.weight_kind == WeightKind::Bernoulli
                                 ? 1.0
                                 : rng.next_double() * 2.0 * params.hom_mean(g);
            if (w > 0.0) h.add_edge(nodes, w);
            ++t;
        }
        offset += size;
    }
    {
        Rng rng = base.fork(0x686574);
        const std::uint64_t count = approx_binomial(rng, het_edges, incl_het);
        for (std::uint64_t t = 0; t < count;) {
            auto& nodes = sample_subset(rng, 1, params.n, params.d, scratch);
            std::uint32_t group = 0;
            if (homogeneous(nodes, truth, &group)) continue;
            if (!seen.insert(edge_key(nodes)).second) continue;
            const double w = params.weight_kind == WeightKind::Bernoulli
                                 ? 1.0
                                 : rng.next_double() * 2.0 * params.q;
            if (w > 0.0) h.add_edge(nodes, w);
            ++t;
        }
    }
    h.freeze();
    return {std::move(h), truth};
}

WeightedHypergraph sample_censored_bm(const CbmParams& params, const Partition& truth,
                                      std::uint64_t seed) {
    params.validate();
    truth.validate();
    if (truth.k != 2) throw InvalidParams("censored model requires k = 2");
    if (truth.n() != params.n) throw InvalidParams("truth size mismatch");

    WeightedHypergraph h(params.n, params.d);
    const Rng base(seed);
    const double total_edges = binom(params.n, params.d);
    if (total_edges > kEnumerationBudget) {
        throw BudgetExceeded("censored model sampler requires enumerable edge set");
    }
    for_each_combination(params.n, params.d, [&](std::span<const NodeId> nodes) {
        std::uint32_t group = 0;
        const bool hom = homogeneous(nodes, truth, &group);
        Rng rng = base.fork(edge_key(nodes));
        const double u = rng.next_double();
        if (u >= params.alpha) return; // erased
        const double one_prob = hom ? params.alpha * (1.0 - params.theta)
                                    : params.alpha * params.theta;
        h.add_edge(nodes, u < one_prob ? 1.0 : 0.0);
    });
    h.freeze();
    return h;
}

std::pair<WeightedHypergraph, Partition> sample_planted_clique(std::uint32_t n, std::uint32_t d,
                                                               std::uint32_t s,
                                                               std::uint64_t seed) {
    if (d < 2 || n < d) throw InvalidParams("bad n/d");
    if (s < d || s > n) throw InvalidParams("clique size must lie in [d, n]");
    if (binom(n, d) > kEnumerationBudget) {
        throw BudgetExceeded("planted clique sampler requires enumerable edge set");
    }

    Partition truth;
    truth.k = s == n ? 1 : 2;
    truth.labels.assign(n, 2);
    std::fill(truth.labels.begin(), truth.labels.begin() + s, 1u);

    WeightedHypergraph h(n, d);
    const Rng base(seed);
    for_each_combination(n, d, [&](std::span<const NodeId> nodes) {
        const bool inside = nodes.back() <= s; // clique nodes are 1..s
        if (inside) {
            h.add_edge(nodes, 1.0);
        } else if (base.fork(edge_key(nodes)).next_double() < 0.5) {
            h.add_edge(nodes, 1.0);
        }
    });
    h.freeze();
    return {std::move(h), truth};
}

std::pair<PointCloud, Partition> sample_subspace_points(const SubspaceParams& params,
                                                        std::uint64_t seed) {
    params.validate();
    const Rng base(seed);
    PointCloud cloud;
    cloud.points.reserve(params.n());
    Partition truth;
    truth.k = params.k;

    for (std::uint32_t g = 1; g <= params.k; ++g) {
        Rng rng = base.fork(hash_combine(0x737562, g));
        Eigen::MatrixXd gauss(params.ell, params.m);
        for (Eigen::Index c = 0; c < gauss.cols(); ++c)
            for (Eigen::Index r = 0; r < gauss.rows(); ++r) gauss(r, c) = rng.next_gaussian();
        const Eigen::MatrixXd basis =
            Eigen::HouseholderQR<Eigen::MatrixXd>(gauss).householderQ() *
            Eigen::MatrixXd::Identity(params.ell, params.m);
        Eigen::VectorXd offset = Eigen::VectorXd::Zero(params.ell);
        if (params.affine_offset) {
            for (Eigen::Index r = 0; r < offset.size(); ++r) offset(r) = rng.next_gaussian();
        }
        for (std::uint32_t t = 0; t < params.points_per_cluster; ++t) {
            Eigen::VectorXd coeff(params.m);
            for (Eigen::Index r = 0; r < coeff.size(); ++r)
                coeff(r) = 2.0 * rng.next_double() - 1.0;
            Eigen::VectorXd x = basis * coeff + offset;
            if (params.sigma > 0.0) {
                for (Eigen::Index r = 0; r < x.size(); ++r)
                    x(r) += params.sigma * rng.next_gaussian();
            }
            cloud.points.push_back(std::move(x));
            truth.labels.push_back(g);
        }
    }
    return {std::move(cloud), truth};
}

double fitting_residual(const std::vector<Eigen::VectorXd>& pts, std::uint32_t m) {
    if (pts.size() < m + 2) throw InvalidParams("need at least m+2 points to fit an m-flat");
    const std::size_t d = pts.size();
    const Eigen::Index ell = pts[0].size();
    Eigen::MatrixXd stacked(d, ell);
    for (std::size_t i = 0; i < d; ++i) {
        if (pts[i].size() != ell) throw InvalidParams("points must share a dimension");
        stacked.row(i) = pts[i].transpose();
    }
    const Eigen::RowVectorXd centroid = stacked.colwise().mean();
    stacked.rowwise() -= centroid;
    const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXd>(stacked).singularValues();
    double residual_sq = 0.0;
    for (Eigen::Index i = m; i < sv.size(); ++i) residual_sq += sv(i) * sv(i);
    return std::sqrt(residual_sq / static_cast<double>(d));
}

double fitting_weight(const std::vector<Eigen::VectorXd>& pts, std::uint32_t m, double tau) {
    if (tau <= 0.0) throw InvalidParams("fitting scale must be positive");
    return std::exp(-fitting_residual(pts, m) / tau);
}

WeightedHypergraph sketch_hypergraph(const PointCloud& cloud, const SubspaceParams& params,
                                     std::uint64_t seed) {
    params.validate();
    const std::uint32_t n = static_cast<std::uint32_t>(cloud.points.size());
    if (n < params.d) throw InvalidParams("need at least d points");
    WeightedHypergraph h(n, params.d);
    const Rng base(seed);
    const double total_edges = binom(n, params.d);

    std::vector<NodeId> picked;   // d entries per sketched edge
    std::vector<double> fits;
    std::vector<Eigen::VectorXd> pts(params.d);
    auto record = [&](std::span<const NodeId> nodes) {
        for (std::uint32_t i = 0; i < params.d; ++i) pts[i] = cloud.points[nodes[i] - 1];
        picked.insert(picked.end(), nodes.begin(), nodes.end());
        fits.push_back(fitting_residual(pts, params.m));
    };

    if (total_edges <= kEnumerationBudget) {
        for_each_combination(n, params.d, [&](std::span<const NodeId> nodes) {
            if (base.fork(edge_key(nodes)).next_double() < params.s_n) record(nodes);
        });
    } else {
        Rng rng = base.fork(0x736b65);
        const std::uint64_t count = approx_binomial(rng, total_edges, params.s_n);
        if (static_cast<double>(count) > kEnumerationBudget) {
            throw BudgetExceeded("sketch size exceeds the sampling budget");
        }
        std::unordered_set<std::uint64_t> seen;
        std::vector<NodeId> scratch;
        for (std::uint64_t t = 0; t < count;) {
            auto& nodes = sample_subset(rng, 1, n, params.d, scratch);
            if (!seen.insert(edge_key(nodes)).second) continue;
            record(nodes);
            ++t;
        }
    }

    // Adaptive scale: half the (median - 10th percentile) spread of the
    // sketched fits. The low tail tracks the well-fitting edges, so this
    // separates the classes whatever the data units or noise level are.
    double tau = params.fitting_scale();
    if (tau <= 0.0 && !fits.empty()) {
        std::vector<double> sorted = fits;
        std::sort(sorted.begin(), sorted.end());
        const double q50 = sorted[sorted.size() / 2];
        const double q10 = sorted[sorted.size() / 10];
        tau = 0.5 * (q50 - q10);
        if (tau <= 0.0) tau = q50 > 0.0 ? q50 : 1.0;
    }
    if (tau <= 0.0) tau = 1.0;
    for (std::size_t e = 0; e < fits.size(); ++e) {
        h.add_edge(std::span<const NodeId>(picked.data() + e * params.d, params.d),
                   std::exp(-fits[e] / tau));
    }
    h.freeze();
    return h;
}

} // namespace hsc
