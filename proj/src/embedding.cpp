#include "dagdiff/embedding.hpp"

#include <Eigen/Cholesky>
#include <algorithm>
#include <cmath>

namespace dagdiff {

namespace {

/// |correlation| of a unit vector with the all-ones direction.
double constant_alignment(const Vec& v) {
    double nrm = v.norm();
    if (nrm == 0.0) return 0.0;
    return std::abs(v.sum()) / (nrm * std::sqrt(static_cast<double>(v.size())));
}

/// Picks k columns in ascending-eigenvalue order, discarding at most one
/// near-constant eigenvector. A constant coordinate shifts every node
/// equally and carries no distance information.
Mat filter_constant(const EigsResult& eig, int k) {
    const Eigen::Index have = eig.vectors.cols();
    Eigen::Index skip = -1;
    for (Eigen::Index c = 0; c < have; ++c)
        if (constant_alignment(eig.vectors.col(c)) > 0.999) {
            skip = c;
            break;
        }
    Mat p(eig.vectors.rows(), k);
    int put = 0;
    for (Eigen::Index c = 0; c < have && put < k; ++c) {
        if (c == skip) continue;
        p.col(put++) = eig.vectors.col(c);
    }
    if (put < k) throw SolverFailure("eigensolver returned too few usable directions");
    return p;
}

EigsOptions to_eigs(const EmbeddingParams& params) {
    EigsOptions o;
    o.tol = params.tol;
    o.max_iterations = params.max_iterations;
    o.seed = params.seed;
    return o;
}

void check_dims(const UndirectedGraph& g, int k) {
    if (k < 1) throw ValidationError("embedding dimension must be >= 1");
    if (k >= g.node_count())
        throw DimensionTooLarge("embedding dimension " + std::to_string(k) +
                                " must be smaller than the node count " +
                                std::to_string(g.node_count()));
}

}  // namespace

double select_epsilon(const SpMat& q, const EigsOptions& opts) {
    if (q.rows() < 2) return 0.0;
    EigsResult eig = smallest_eigenpairs(q, 2, opts);
    return std::max(eig.values[1], 0.0);
}

double select_mu(const SpMat& l, const SpMat& q, double epsilon) {
    if (l.rows() != q.rows() || l.cols() != q.cols())
        throw BadDims("L and Q dimensions disagree");
    const int n = static_cast<int>(q.rows());
    Vec row_sums = q * Vec::Ones(n);
    double mu = -1.0;
    for (int i = 0; i < n; ++i) {
        double den = 2.0 * q.coeff(i, i) - row_sums[i];
        if (den > 0.0) {
            double cand = epsilon / den;
            if (mu < 0.0 || cand < mu) mu = cand;
        }
    }
    return mu < 0.0 ? 0.0 : mu;
}

SpMat build_embedding_matrix(const SpMat& l, const SpMat& q, double mu, double epsilon) {
    SpMat a = l - mu * q;
    SpMat eye(l.rows(), l.cols());
    eye.setIdentity();
    a += epsilon * eye;
    a.makeCompressed();
    return a;
}

Embedding embed(const UndirectedGraph& g, const EmbeddingParams& params) {
    g.require_connected();
    check_dims(g, params.k);
    SpMat l = build_laplacian(g);
    TwoHopStructure th = two_hop_structure(g);
    EigsOptions eo = to_eigs(params);
    Embedding out;
    out.epsilon = select_epsilon(th.q, eo);
    out.mu = select_mu(l, th.q, out.epsilon);
    SpMat a = build_embedding_matrix(l, th.q, out.mu, out.epsilon);
    const int ask = std::min(params.k + 2, g.node_count());
    out.p = filter_constant(smallest_eigenpairs(a, ask, eo), params.k);
    return out;
}

Embedding embed_le(const UndirectedGraph& g, const EmbeddingParams& params) {
    g.require_connected();
    check_dims(g, params.k);
    SpMat l = build_laplacian(g);
    const int ask = std::min(params.k + 2, g.node_count());
    Embedding out;
    out.p = filter_constant(smallest_eigenpairs(l, ask, to_eigs(params)), params.k);
    return out;
}

Mat lle_reconstruction_weights(const UndirectedGraph& g, int k_nn, int k) {
    const int n = g.node_count();

    // Feature vector of node i = its weighted adjacency row; reconstruction
    // neighborhoods are the graph's 1-hop sets (optionally capped to the
    // k_nn strongest edges).
    Mat features = Mat::Zero(n, n);
    for (const auto& e : g.edges()) {
        features(e.i, e.j) = e.w;
        features(e.j, e.i) = e.w;
    }

    Mat w_rec = Mat::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        std::vector<Neighbor> nbrs(g.neighbors(i).begin(), g.neighbors(i).end());
        if (k_nn > 0 && static_cast<int>(nbrs.size()) > k_nn) {
            std::sort(nbrs.begin(), nbrs.end(), [](const Neighbor& a, const Neighbor& b) {
                return a.w != b.w ? a.w > b.w : a.node < b.node;
            });
            nbrs.resize(k_nn);
            std::sort(nbrs.begin(), nbrs.end(),
                      [](const Neighbor& a, const Neighbor& b) { return a.node < b.node; });
        }
        const int q = static_cast<int>(nbrs.size());
        Mat diffs(q, n);
        for (int a = 0; a < q; ++a) diffs.row(a) = features.row(i) - features.row(nbrs[a].node);
        Mat gram = diffs * diffs.transpose();
        if (q > k) gram.diagonal().array() += 1e-3 * gram.trace();
        Vec sol = gram.ldlt().solve(Vec::Ones(q));
        double total = sol.sum();
        if (!sol.allFinite() || std::abs(total) < 1e-12) {
            gram.diagonal().array() += 1e-3 * std::max(gram.trace(), 1.0);
            sol = gram.ldlt().solve(Vec::Ones(q));
            total = sol.sum();
            if (!sol.allFinite() || std::abs(total) < 1e-12)
                throw SolverFailure("LLE reconstruction solve failed at node " +
                                    std::to_string(i));
        }
        sol /= total;
        for (int a = 0; a < q; ++a) w_rec(i, nbrs[a].node) = sol[a];
    }
    return w_rec;
}

Embedding embed_lle(const UndirectedGraph& g, const EmbeddingParams& params, int k_nn) {
    g.require_connected();
    check_dims(g, params.k);
    const int n = g.node_count();

    Mat w_rec = lle_reconstruction_weights(g, k_nn, params.k);
    Mat iw = Mat::Identity(n, n) - w_rec;
    Mat m = iw.transpose() * iw;
    m = 0.5 * (m + m.transpose()).eval();
    SpMat ms = m.sparseView();
    const int ask = std::min(params.k + 2, n);
    Embedding out;
    out.p = filter_constant(smallest_eigenpairs(ms, ask, to_eigs(params)), params.k);
    return out;
}

}  // namespace dagdiff
