#pragma once

#include <cstdint>

#include "dagdiff/eigs.hpp"
#include "dagdiff/graph.hpp"
#include "dagdiff/linalg.hpp"
#include "dagdiff/two_hop.hpp"

namespace dagdiff {

struct EmbeddingParams {
    int k = 2;
    double tol = 1e-8;
    int max_iterations = 2000;
    std::uint64_t seed = 0;
};

/// N×K latent coordinates with the selection constants that produced them.
struct Embedding {
    Mat p;              // row i is the coordinate of node i
    double epsilon = 0.0;
    double mu = 0.0;

    int dims() const { return static_cast<int>(p.cols()); }
    double latent_distance(int i, int j) const { return (p.row(i) - p.row(j)).norm(); }
};

/// Second-smallest eigenvalue of Q (ascending with multiplicity), clamped at
/// zero against eigensolver noise.
double select_epsilon(const SpMat& q, const EigsOptions& opts = {});

/// Smallest nonnegative mu over rows with positive denominator
/// Q_ii - sum_{j != i} Q_ij; zero when Q has no such row. The returned value
/// keeps every Gershgorin disc left-end of L - mu*Q + eps*I at >= 0.
double select_mu(const SpMat& l, const SpMat& q, double epsilon);

/// A = L - mu*Q + eps*I.
SpMat build_embedding_matrix(const SpMat& l, const SpMat& q, double mu, double epsilon);

/// Trace-minimization embedding: the K smallest eigenvectors of A, with the
/// near-constant eigenvector (|corr with 1| > 0.999) filtered out.
Embedding embed(const UndirectedGraph& g, const EmbeddingParams& params = {});

/// Laplacian-eigenmaps baseline: K smallest nonzero-eigenvalue eigenvectors
/// of L (constant vector skipped).
Embedding embed_le(const UndirectedGraph& g, const EmbeddingParams& params = {});

/// Locally-linear-embedding baseline over graph 1-hop neighborhoods:
/// reconstruction weights from a regularized Gram solve, then the bottom
/// non-trivial eigenvectors of (I-W)^T (I-W). k_nn caps the neighbor set to
/// the k_nn strongest edges (0 keeps all 1-hop neighbors).
Embedding embed_lle(const UndirectedGraph& g, const EmbeddingParams& params = {}, int k_nn = 0);

/// First LLE stage on its own: row i holds the weights reconstructing node
/// i's feature vector from its neighborhood; rows sum to 1, diagonal is 0.
Mat lle_reconstruction_weights(const UndirectedGraph& g, int k_nn = 0, int k = 2);

}  // namespace dagdiff
