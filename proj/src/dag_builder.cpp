#include "dagdiff/dag_builder.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

namespace dagdiff {

namespace {

std::vector<Arc> orient_by_distance(const UndirectedGraph& g, const Vec& dist) {
    std::vector<Arc> arcs;
    arcs.reserve(g.edge_count());
    for (const auto& e : g.edges()) {
        if (dist[e.i] < dist[e.j] || (dist[e.i] == dist[e.j] && e.i < e.j))
            arcs.push_back({e.i, e.j, e.w});
        else
            arcs.push_back({e.j, e.i, e.w});
    }
    return arcs;
}

}  // namespace

Dag build_dag(const UndirectedGraph& g, const Embedding& emb, int s, bool repair) {
    const int n = g.node_count();
    if (emb.p.rows() != n) throw BadDims("embedding row count does not match the graph");
    if (s < 0 || s >= n) throw ValidationError("source index out of range");
    g.require_connected();

    Vec dist(n);
    for (int i = 0; i < n; ++i) dist[i] = (emb.p.row(i) - emb.p.row(s)).norm();
    std::vector<Arc> arcs = orient_by_distance(g, dist);

    ValidationReport rep = validate_dag(n, arcs, s);
    if (rep.ok()) return Dag::build(n, std::move(arcs), s);
    if (!repair) throw DagInvalid(std::move(rep), "latent DAG construction");

    // Off-model repair: each secondary source gets an incoming arc by
    // reversing one of its outgoing arcs. A reversal is rejected when another
    // directed path to the arc's head exists (it would close a cycle); among
    // the rest, heads that keep an incoming arc of their own are preferred,
    // then the head latently closest to the source, ties to the smaller
    // index. Fixing one node can orphan another, so passes repeat until the
    // DAG validates or the cap is hit; a repair that still fails validation
    // is surfaced, not forced.
    auto path_exists = [&](int from, int to) {
        std::vector<std::vector<int>> out(n);
        for (const Arc& a : arcs)
            if (!(a.from == from && a.to == to)) out[a.from].push_back(a.to);
        std::vector<char> seen(n, 0);
        std::vector<int> stack{from};
        seen[from] = 1;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            if (u == to) return true;
            for (int w : out[u])
                if (!seen[w]) {
                    seen[w] = 1;
                    stack.push_back(w);
                }
        }
        return false;
    };

    for (int round = 0; round < n && !rep.extra_sources.empty(); ++round) {
        std::vector<int> indeg(n, 0);
        for (const Arc& a : arcs) ++indeg[a.to];
        bool changed = false;
        for (int v : rep.extra_sources) {
            std::size_t best = arcs.size();
            bool best_keeps_head = false;
            for (std::size_t k = 0; k < arcs.size(); ++k) {
                if (arcs[k].from != v || path_exists(v, arcs[k].to)) continue;
                bool keeps_head = indeg[arcs[k].to] >= 2;
                if (best == arcs.size() || (keeps_head && !best_keeps_head) ||
                    (keeps_head == best_keeps_head &&
                     (dist[arcs[k].to] < dist[arcs[best].to] ||
                      (dist[arcs[k].to] == dist[arcs[best].to] && arcs[k].to < arcs[best].to)))) {
                    best = k;
                    best_keeps_head = keeps_head;
                }
            }
            if (best == arcs.size()) continue;  // every reversal would close a cycle
            --indeg[arcs[best].to];
            ++indeg[v];
            std::swap(arcs[best].from, arcs[best].to);
            changed = true;
        }
        if (!changed) break;
        rep = validate_dag(n, arcs, s);
    }
    if (!rep.ok()) throw DagInvalid(std::move(rep), "latent DAG repair failed");
    return Dag::build(n, std::move(arcs), s);
}

Dag build_hop_dag(const UndirectedGraph& g, int s) {
    g.require_connected();
    std::vector<int> hops = hop_distances(g, s);
    std::vector<Arc> arcs;
    arcs.reserve(g.edge_count());
    for (const auto& e : g.edges()) {
        if (hops[e.i] < hops[e.j])
            arcs.push_back({e.i, e.j, e.w});
        else if (hops[e.j] < hops[e.i])
            arcs.push_back({e.j, e.i, e.w});
        // same-hop edges are dropped
    }
    return Dag::build(g.node_count(), std::move(arcs), s);
}

SpectrumReport spectrum_report(const Dag& d) {
    const int n = d.node_count();
    SpectrumReport rep;
    rep.eigenvalues = Eigen::Map<const Vec>(d.in_degrees().data(), n);
    std::sort(rep.eigenvalues.begin(), rep.eigenvalues.end());

    SpMat lbar = build_directed_laplacian(d);
    rep.ones_residual = (lbar * Vec::Ones(n)).cwiseAbs().maxCoeff();
    Vec left = lbar.transpose() * Vec::Unit(n, d.source());
    rep.left_residual = left.cwiseAbs().maxCoeff();

    if (n <= 200) {
        rep.cross_checked = true;
        Eigen::EigenSolver<Mat> es{Mat(lbar)};
        if (es.info() != Eigen::Success)
            throw SolverFailure("general eigensolver failed on the DAG Laplacian");
        const double scale = std::max(rep.eigenvalues[n - 1], 1.0);
        double worst = 0.0;
        for (int c = 0; c < n; ++c) {
            if (std::abs(es.eigenvalues()[c]) <= 1e-9 * scale) continue;  // the null direction
            worst = std::max(worst, std::abs(es.eigenvectors()(d.source(), c)) /
                                        es.eigenvectors().col(c).norm());
        }
        rep.orthogonality = worst;
    }
    return rep;
}

}  // namespace dagdiff
