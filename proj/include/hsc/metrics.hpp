#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "hsc/hypergraph.hpp"

namespace hsc {

using ConfusionMatrix = Eigen::Matrix<std::uint64_t, Eigen::Dynamic, Eigen::Dynamic>;

struct AlignmentResult {
    std::vector<std::uint32_t> permutation; // maps phi label -> psi label, 1-based
    double error_fraction = 0.0;
    ConfusionMatrix confusion; // confusion(a,b) = |{i : phi(i)=a+1, psi(i)=b+1}|
};

/// Fraction of nodes mislabeled under the best relabeling of phi onto psi.
/// Exact: brute force over k! permutations for k <= 6, optimal assignment
/// on the confusion matrix above that.
AlignmentResult error_fraction(const Partition& phi, const Partition& psi);

/// The two exact routes, exposed separately so they can be cross-checked.
AlignmentResult align_brute_force(const Partition& phi, const Partition& psi);
AlignmentResult align_assignment(const Partition& phi, const Partition& psi);

/// min over permutations of the max per-ground-truth-cluster mismatch
/// fraction. Brute force; every psi cluster must be nonempty.
double worst_cluster_error(const Partition& phi, const Partition& psi);

} // namespace hsc
