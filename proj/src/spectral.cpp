#include "hsc/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include "hsc/combinatorics.hpp"
#include "hsc/rng.hpp"

namespace hsc {

SimilarityMatrix similarity_matrix(const WeightedHypergraph& h) {
    const std::uint32_t n = h.node_count();
    const std::uint32_t d = h.edge_size();
    SimilarityMatrix a = SimilarityMatrix::Zero(n, n);
    for (std::size_t e = 0; e < h.stored_edge_count(); ++e) {
        if (!h.observed(e)) continue;
        const double w = h.weight(e);
        if (w == 0.0) continue;
        const auto nodes = h.edge_nodes(e);
        for (std::uint32_t i = 0; i + 1 < d; ++i) {
            for (std::uint32_t j = i + 1; j < d; ++j) {
                a(nodes[i] - 1, nodes[j] - 1) += w;
                a(nodes[j] - 1, nodes[i] - 1) += w;
            }
        }
    }
    return a;
}

double default_c_thr(std::uint32_t d) {
    return d == 2 ? 6.0 : 3.0 * static_cast<double>(d) * static_cast<double>(d);
}

TrimResult trim(const SimilarityMatrix& a, double c_thr) {
    if (c_thr <= 0.0) throw InvalidParams("c_thr must be positive");
    const Eigen::Index n = a.rows();
    const Eigen::VectorXd row_sums = a.rowwise().sum();
    const double threshold = c_thr * row_sums.sum() / static_cast<double>(n);
    TrimResult result;
    result.matrix = a;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (row_sums(i) > threshold) {
            result.matrix.row(i).setZero();
            result.matrix.col(i).setZero();
            result.removed.push_back(static_cast<NodeId>(i + 1));
        }
    }
    return result;
}

Embedding top_k_eigenvectors(const SimilarityMatrix& a0, std::uint32_t k, EigenMode mode) {
    const Eigen::Index n = a0.rows();
    if (k < 1 || static_cast<Eigen::Index>(k) > n) throw InvalidParams("k out of range");

    const double frob = a0.norm();
    Embedding emb;
    emb.vectors = Eigen::MatrixXd::Zero(n, k);
    emb.eigenvalues = Eigen::VectorXd::Zero(k);
    if (frob == 0.0) {
        for (std::uint32_t j = 0; j < k; ++j) emb.vectors(j, j) = 1.0;
        return emb;
    }

    // Shift so the wanted eigenvalues dominate in modulus. Gershgorin
    // bounds every |lambda| by the max absolute row sum.
    double shift = 0.0;
    if (mode == EigenMode::Assortative) {
        shift = a0.cwiseAbs().rowwise().sum().maxCoeff();
    }

    const double tol = 1e-8 * frob;
    const std::uint64_t matvec_cap =
        50 + static_cast<std::uint64_t>(10.0 * static_cast<double>(n) *
                                        std::log(std::max<double>(n, 2)));

    auto apply = [&](const Eigen::MatrixXd& q) -> Eigen::MatrixXd {
        Eigen::MatrixXd z = a0.selfadjointView<Eigen::Lower>() * q;
        if (shift != 0.0) z += shift * q;
        return z;
    };

    // Deterministic random start.
    Rng rng(0x65696765u);
    Eigen::MatrixXd q(n, k);
    for (Eigen::Index c = 0; c < q.cols(); ++c)
        for (Eigen::Index r = 0; r < q.rows(); ++r) q(r, c) = rng.next_gaussian();

    Eigen::MatrixXd locked(n, 0);
    Eigen::VectorXd locked_vals(0);
    std::uint64_t matvecs = 0;
    double worst_residual = std::numeric_limits<double>::infinity();

    auto orthonormalize = [&](Eigen::MatrixXd& m) {
        if (locked.cols() > 0) m -= locked * (locked.transpose() * m);
        const Eigen::HouseholderQR<Eigen::MatrixXd> qr(m);
        m = qr.householderQ() * Eigen::MatrixXd::Identity(m.rows(), m.cols());
    };

    orthonormalize(q);
    while (true) {
        Eigen::MatrixXd z = apply(q);
        matvecs += q.cols();
        // Rayleigh-Ritz on the active block.
        const Eigen::MatrixXd small = q.transpose() * z;
        const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (small + small.transpose()));
        // Order Ritz pairs by decreasing shifted modulus so locking peels
        // off the dominant ones first.
        std::vector<Eigen::Index> order(q.cols());
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](Eigen::Index x, Eigen::Index y) {
            return std::abs(es.eigenvalues()(x)) > std::abs(es.eigenvalues()(y));
        });
        Eigen::MatrixXd ritz_vecs(n, q.cols());
        Eigen::VectorXd ritz_vals(q.cols());
        for (Eigen::Index c = 0; c < q.cols(); ++c) {
            ritz_vecs.col(c) = q * es.eigenvectors().col(order[c]);
            ritz_vals(c) = es.eigenvalues()(order[c]);
        }
        const Eigen::MatrixXd applied = apply(ritz_vecs);
        matvecs += q.cols();
        // Lock converged leading pairs.
        Eigen::Index lock_count = 0;
        worst_residual = 0.0;
        for (Eigen::Index c = 0; c < q.cols(); ++c) {
            const double res = (applied.col(c) - ritz_vals(c) * ritz_vecs.col(c)).norm();
            worst_residual = std::max(worst_residual, res);
            if (c == lock_count && res <= tol) ++lock_count;
        }
        if (lock_count > 0) {
            const Eigen::Index old = locked.cols();
            locked.conservativeResize(n, old + lock_count);
            locked_vals.conservativeResize(old + lock_count);
            for (Eigen::Index c = 0; c < lock_count; ++c) {
                locked.col(old + c) = ritz_vecs.col(c);
                locked_vals(old + c) = ritz_vals(c);
            }
        }
        if (locked.cols() >= static_cast<Eigen::Index>(k)) break;
        q = applied.rightCols(q.cols() - lock_count);
        orthonormalize(q);
        if (matvecs > matvec_cap) {
            throw EigenNoConvergence("eigensolver hit the matvec cap; residual " +
                                     std::to_string(worst_residual));
        }
    }

    for (std::uint32_t c = 0; c < k; ++c) {
        emb.vectors.col(c) = locked.col(c);
        emb.eigenvalues(c) = locked_vals(c) - shift;
    }
    return emb;
}

namespace {

double assign_points(const Eigen::MatrixXd& rows, const Eigen::MatrixXd& centers,
                     std::vector<std::uint32_t>& labels) {
    double cost = 0.0;
    for (Eigen::Index i = 0; i < rows.rows(); ++i) {
        double best = std::numeric_limits<double>::infinity();
        std::uint32_t arg = 0;
        for (Eigen::Index c = 0; c < centers.rows(); ++c) {
            const double dist = (rows.row(i) - centers.row(c)).squaredNorm();
            if (dist < best) {
                best = dist;
                arg = static_cast<std::uint32_t>(c);
            }
        }
        labels[i] = arg;
        cost += best;
    }
    return cost;
}

Eigen::MatrixXd seed_centers(const Eigen::MatrixXd& rows, std::uint32_t k, Rng& rng) {
    const Eigen::Index n = rows.rows();
    Eigen::MatrixXd centers(k, rows.cols());
    centers.row(0) = rows.row(static_cast<Eigen::Index>(rng.next_below(n)));
    Eigen::VectorXd min_dist(n);
    for (Eigen::Index i = 0; i < n; ++i)
        min_dist(i) = (rows.row(i) - centers.row(0)).squaredNorm();
    for (std::uint32_t c = 1; c < k; ++c) {
        const double total = min_dist.sum();
        Eigen::Index pick = 0;
        if (total > 0.0) {
            double target = rng.next_double() * total;
            for (Eigen::Index i = 0; i < n; ++i) {
                target -= min_dist(i);
                if (target <= 0.0) {
                    pick = i;
                    break;
                }
            }
        } else {
            pick = static_cast<Eigen::Index>(rng.next_below(n));
        }
        centers.row(c) = rows.row(pick);
        for (Eigen::Index i = 0; i < n; ++i) {
            min_dist(i) = std::min(min_dist(i), (rows.row(i) - centers.row(c)).squaredNorm());
        }
    }
    return centers;
}

} // namespace

ClusterResult cluster_rows(const Eigen::MatrixXd& rows, std::uint32_t k, std::uint32_t restarts,
                           std::uint64_t seed) {
    if (restarts < 1) throw InvalidParams("restarts must be >= 1");
    const Eigen::Index n = rows.rows();
    if (k < 1 || static_cast<Eigen::Index>(k) > n) throw InvalidParams("k out of range");

    const Rng base(seed);
    ClusterResult best;
    best.cost = std::numeric_limits<double>::infinity();
    std::vector<std::uint32_t> labels(n);

    for (std::uint32_t run = 0; run < restarts; ++run) {
        Rng rng = base.fork(hash_combine(0x6b6d6570u, run));
        Eigen::MatrixXd centers = seed_centers(rows, k, rng);
        double cost = assign_points(rows, centers, labels);
        for (int iter = 0; iter < 100; ++iter) {
            // Recompute centers.
            Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(k, rows.cols());
            std::vector<std::uint32_t> counts(k, 0);
            for (Eigen::Index i = 0; i < n; ++i) {
                sums.row(labels[i]) += rows.row(i);
                ++counts[labels[i]];
            }
            for (std::uint32_t c = 0; c < k; ++c) {
                if (counts[c] > 0) {
                    centers.row(c) = sums.row(c) / static_cast<double>(counts[c]);
                } else {
                    // Re-seed an empty cluster at the point farthest from
                    // its current center.
                    Eigen::Index far = 0;
                    double far_dist = -1.0;
                    for (Eigen::Index i = 0; i < n; ++i) {
                        const double dist = (rows.row(i) - centers.row(c)).squaredNorm();
                        if (dist > far_dist) {
                            far_dist = dist;
                            far = i;
                        }
                    }
                    centers.row(c) = rows.row(far);
                }
            }
            const double new_cost = assign_points(rows, centers, labels);
            if (new_cost >= cost - 1e-15 * (1.0 + cost)) {
                cost = std::min(cost, new_cost);
                break;
            }
            cost = new_cost;
        }
        if (cost < best.cost) {
            best.cost = cost;
            best.centers = centers;
            best.partition.k = k;
            best.partition.labels.assign(n, 1);
            for (Eigen::Index i = 0; i < n; ++i) best.partition.labels[i] = labels[i] + 1;
        }
    }
    return best;
}

std::pair<SimilarityMatrix, BlockMeanMatrix> expected_similarity(const SbmParams& params) {
    params.validate();
    const std::uint32_t k = params.k;
    BlockMeanMatrix block;
    block.mu = binom(params.n - 2, params.d - 2) * params.alpha;
    block.nu = binom(params.n - 2, params.d - 2) * params.p * params.alpha;
    block.b = Eigen::MatrixXd::Zero(k, k);
    const double pairs_total = binom(params.n - 2, params.d - 2);
    for (std::uint32_t l = 1; l <= k; ++l) {
        const double pairs_in = binom(params.cluster_sizes[l - 1] - 2, params.d - 2);
        for (std::uint32_t m = 1; m <= k; ++m) {
            if (l == m) {
                block.b(l - 1, m - 1) = params.alpha * (params.hom_mean(l) * pairs_in +
                                                        params.q * (pairs_total - pairs_in));
            } else {
                block.b(l - 1, m - 1) = params.q * params.alpha * pairs_total;
            }
        }
    }
    const Partition truth = params.ground_truth();
    SimilarityMatrix p(params.n, params.n);
    for (std::uint32_t i = 0; i < params.n; ++i) {
        for (std::uint32_t j = 0; j < params.n; ++j) {
            p(i, j) = i == j ? 0.0 : block.b(truth.labels[i] - 1, truth.labels[j] - 1);
        }
    }
    return {std::move(p), std::move(block)};
}

double spectral_norm_sym(const Eigen::MatrixXd& m) {
    if (m.norm() == 0.0) return 0.0;
    const Embedding e = top_k_eigenvectors(m, 1, EigenMode::Disassortative);
    return std::abs(e.eigenvalues(0));
}

} // namespace hsc
