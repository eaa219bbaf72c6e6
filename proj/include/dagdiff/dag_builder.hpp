#pragma once

#include "dagdiff/embedding.hpp"
#include "dagdiff/graph.hpp"
#include "dagdiff/linalg.hpp"

namespace dagdiff {

/// Directs each undirected edge (i, j) from the endpoint latently closer to
/// the source toward the farther one, carrying the undirected weight; exact
/// distance ties point from the smaller index to the larger. Throws
/// DagInvalid when the orientation leaves secondary sources or unreachable
/// nodes. With repair = true, each secondary source receives one incoming
/// arc by reversing one of its outgoing arcs: reversals that would close a
/// cycle are rejected, heads left with no other incoming arc are avoided
/// when possible, and the head latently closest to the source wins among
/// the survivors. Passes repeat (a fix can orphan another node) until the
/// DAG validates; a repair that still fails is surfaced, not forced. This
/// mode trades fidelity to the distance rule for validity on imperfect
/// embeddings.
Dag build_dag(const UndirectedGraph& g, const Embedding& emb, int s, bool repair = false);

/// Hop-count baseline: arc i -> j iff (i, j) in E and h_i < h_j from BFS
/// hops; same-hop edges are dropped.
Dag build_hop_dag(const UndirectedGraph& g, int s);

/// Spectral facts of the directed Laplacian for a validated DAG.
struct SpectrumReport {
    Vec eigenvalues;               // in-degree sums sorted ascending
    double ones_residual = 0.0;    // ‖L̄·1‖_inf
    double left_residual = 0.0;    // ‖δ_s^T·L̄‖_inf
    double orthogonality = 0.0;    // max_{n>1} |u_1^T v_n| (n <= 200, else 0 and skipped)
    bool cross_checked = false;    // general-eigensolver check ran
};

SpectrumReport spectrum_report(const Dag& d);

}  // namespace dagdiff
