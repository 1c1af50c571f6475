#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "hsc/generators.hpp"
#include "hsc/hypergraph.hpp"

namespace hsc {

/// Dense symmetric pair-similarity matrix with zero diagonal.
using SimilarityMatrix = Eigen::MatrixXd;

/// Stacked leading eigenvectors with their Ritz values.
struct Embedding {
    Eigen::MatrixXd vectors;    // n x k, orthonormal columns
    Eigen::VectorXd eigenvalues;
};

/// k x k block mean matrix B with P = Z B Z^T matching the expected
/// similarity matrix off the diagonal.
struct BlockMeanMatrix {
    Eigen::MatrixXd b;
    double mu = 0.0; // C(n-2, d-2) * alpha
    double nu = 0.0; // C(n-2, d-2) * p * alpha
};

enum class EigenMode {
    Assortative,    // largest algebraic eigenvalues
    Disassortative, // largest absolute eigenvalues
};

/// A[i][j] = sum of W_e over stored observed edges containing both i and j.
SimilarityMatrix similarity_matrix(const WeightedHypergraph& h);

struct TrimResult {
    SimilarityMatrix matrix;
    std::vector<NodeId> removed;
};

/// Zeroes every row/column whose sum in A strictly exceeds
/// c_thr * (total sum) / n. Decisions are made against the original A in
/// one pass.
TrimResult trim(const SimilarityMatrix& a, double c_thr);

/// Default trimming constant: 6 at d = 2, 3*d^2 otherwise.
double default_c_thr(std::uint32_t d);

/// Block orthogonal iteration with Rayleigh-Ritz extraction and locking
/// of converged pairs. Throws EigenNoConvergence past the matvec cap.
Embedding top_k_eigenvectors(const SimilarityMatrix& a0, std::uint32_t k,
                             EigenMode mode = EigenMode::Assortative);

struct ClusterResult {
    Partition partition;
    double cost = 0.0; // sum over groups of within-group squared deviation
    Eigen::MatrixXd centers;
};

/// k-means on the rows of the embedding: careful seeding, Lloyd updates,
/// best of `restarts` runs by cost.
ClusterResult cluster_rows(const Eigen::MatrixXd& rows, std::uint32_t k, std::uint32_t restarts,
                           std::uint64_t seed);

/// Exact expectation P = Z B Z^T (diagonal zeroed) and the B matrix.
std::pair<SimilarityMatrix, BlockMeanMatrix> expected_similarity(const SbmParams& params);

/// Spectral norm of a symmetric matrix (largest |eigenvalue|); used by
/// the concentration probes.
double spectral_norm_sym(const Eigen::MatrixXd& m);

} // namespace hsc
