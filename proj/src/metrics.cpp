#include "hsc/metrics.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "hsc/errors.hpp"

namespace hsc {

namespace {

ConfusionMatrix confusion_counts(const Partition& phi, const Partition& psi) {
    phi.validate();
    psi.validate();
    if (phi.n() != psi.n()) throw ShapeMismatch("partitions label different node counts");
    if (phi.k != psi.k) throw ShapeMismatch("partitions use different group counts");
    ConfusionMatrix c = ConfusionMatrix::Zero(phi.k, phi.k);
    for (std::uint32_t i = 0; i < phi.n(); ++i) {
        c(phi.labels[i] - 1, psi.labels[i] - 1) += 1;
    }
    return c;
}

AlignmentResult from_permutation(ConfusionMatrix c, const std::vector<std::uint32_t>& perm,
                                 std::uint32_t n) {
    AlignmentResult r;
    std::uint64_t matched = 0;
    for (std::uint32_t a = 0; a < perm.size(); ++a) matched += c(a, perm[a] - 1);
    r.permutation = perm;
    r.error_fraction = 1.0 - static_cast<double>(matched) / n;
    r.confusion = std::move(c);
    return r;
}

// Hungarian algorithm on a k x k cost matrix, minimizing total cost.
// Returns the column matched to each row (0-based).
std::vector<std::uint32_t> min_cost_assignment(const Eigen::MatrixXd& cost) {
    const int k = static_cast<int>(cost.rows());
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> u(k + 1, 0.0), v(k + 1, 0.0);
    std::vector<int> match(k + 1, 0); // match[col] = row, 1-based; 0 = free
    std::vector<int> way(k + 1, 0);
    for (int row = 1; row <= k; ++row) {
        match[0] = row;
        int col0 = 0;
        std::vector<double> minv(k + 1, inf);
        std::vector<char> used(k + 1, 0);
        do {
            used[col0] = 1;
            const int row0 = match[col0];
            double delta = inf;
            int col1 = -1;
            for (int col = 1; col <= k; ++col) {
                if (used[col]) continue;
                const double cur = cost(row0 - 1, col - 1) - u[row0] - v[col];
                if (cur < minv[col]) {
                    minv[col] = cur;
                    way[col] = col0;
                }
                if (minv[col] < delta) {
                    delta = minv[col];
                    col1 = col;
                }
            }
            for (int col = 0; col <= k; ++col) {
                if (used[col]) {
                    u[match[col]] += delta;
                    v[col] -= delta;
                } else {
                    minv[col] -= delta;
                }
            }
            col0 = col1;
        } while (match[col0] != 0);
        // Augment along the alternating path.
        do {
            const int col1 = way[col0];
            match[col0] = match[col1];
            col0 = col1;
        } while (col0 != 0);
    }
    std::vector<std::uint32_t> row_to_col(k, 0);
    for (int col = 1; col <= k; ++col) row_to_col[match[col] - 1] = static_cast<std::uint32_t>(col - 1);
    return row_to_col;
}

} // namespace

AlignmentResult align_brute_force(const Partition& phi, const Partition& psi) {
    ConfusionMatrix c = confusion_counts(phi, psi);
    const std::uint32_t k = phi.k;
    std::vector<std::uint32_t> perm(k), best(k);
    std::iota(perm.begin(), perm.end(), 1u);
    best = perm;
    std::uint64_t best_matched = 0;
    do {
        std::uint64_t matched = 0;
        for (std::uint32_t a = 0; a < k; ++a) matched += c(a, perm[a] - 1);
        if (matched > best_matched) {
            best_matched = matched;
            best = perm;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return from_permutation(std::move(c), best, phi.n());
}

AlignmentResult align_assignment(const Partition& phi, const Partition& psi) {
    ConfusionMatrix c = confusion_counts(phi, psi);
    const std::uint32_t k = phi.k;
    // Maximize the permuted trace by minimizing (max entry - count).
    const double top = static_cast<double>(c.maxCoeff());
    Eigen::MatrixXd cost(k, k);
    for (std::uint32_t a = 0; a < k; ++a) {
        for (std::uint32_t b = 0; b < k; ++b) cost(a, b) = top - static_cast<double>(c(a, b));
    }
    const std::vector<std::uint32_t> row_to_col = min_cost_assignment(cost);
    std::vector<std::uint32_t> perm(k);
    for (std::uint32_t a = 0; a < k; ++a) perm[a] = row_to_col[a] + 1;
    return from_permutation(std::move(c), perm, phi.n());
}

AlignmentResult error_fraction(const Partition& phi, const Partition& psi) {
    return phi.k <= 6 ? align_brute_force(phi, psi) : align_assignment(phi, psi);
}

double worst_cluster_error(const Partition& phi, const Partition& psi) {
    ConfusionMatrix c = confusion_counts(phi, psi);
    const std::uint32_t k = phi.k;
    const std::vector<std::uint32_t> sizes = psi.group_sizes();
    for (std::uint32_t j = 0; j < k; ++j) {
        if (sizes[j] == 0) throw InvalidPartition("empty ground-truth cluster");
    }
    std::vector<std::uint32_t> perm(k);
    std::iota(perm.begin(), perm.end(), 1u);
    double best = 1.0;
    do {
        double worst = 0.0;
        for (std::uint32_t j = 0; j < k; ++j) {
            // Under Pi = perm, the phi label mapped onto psi group j+1.
            std::uint32_t source = 0;
            for (std::uint32_t a = 0; a < k; ++a) {
                if (perm[a] == j + 1) {
                    source = a;
                    break;
                }
            }
            const std::uint64_t correct = c(source, j);
            worst = std::max(worst, 1.0 - static_cast<double>(correct) / sizes[j]);
        }
        best = std::min(best, worst);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

} // namespace hsc
