#pragma once

#include <span>
#include <vector>

#include "dagdiff/errors.hpp"
#include "dagdiff/linalg.hpp"

namespace dagdiff {

/// Undirected edge with endpoints stored as i < j.
struct Edge {
    int i = 0;
    int j = 0;
    double w = 0.0;

    friend bool operator==(const Edge&, const Edge&) = default;
};

/// Directed arc from -> to.
struct Arc {
    int from = 0;
    int to = 0;
    double w = 0.0;

    friend bool operator==(const Arc&, const Arc&) = default;
};

/// Weighted neighbor reference used by adjacency iteration.
struct Neighbor {
    int node;
    double w;
};

/// Symmetric positive-weight graph. Immutable after construction; stores a
/// sorted edge list plus a per-node adjacency index. Weights must lie in
/// (0, 1]; a zero weight means "no edge" and may not be stored.
class UndirectedGraph {
public:
    /// Validates indices, symmetry-by-construction (i < j), weight range, and
    /// rejects self-loops and duplicate edges. Does NOT require connectivity;
    /// pipeline entry points call require_connected().
    UndirectedGraph(int n, std::vector<Edge> edges);

    int node_count() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const std::vector<Edge>& edges() const { return edges_; }

    /// Adjacency accessor; absent edges read as 0.
    double weight(int i, int j) const;

    std::span<const Neighbor> neighbors(int i) const {
        return {adjacency_.data() + offsets_[i],
                adjacency_.data() + offsets_[i + 1]};
    }

    double degree(int i) const { return degrees_[i]; }

    bool is_connected() const;

    /// Throws DisconnectedGraph listing the component not containing node 0.
    void require_connected() const;

private:
    int n_;
    std::vector<Edge> edges_;        // sorted by (i, j), i < j
    std::vector<int> offsets_;       // CSR offsets into adjacency_
    std::vector<Neighbor> adjacency_;  // per node, sorted by neighbor index
    std::vector<double> degrees_;
};

/// Result of structural DAG validation. Not an exception: callers decide.
struct ValidationReport {
    bool acyclic = false;
    bool single_source = false;       // the declared source is the only zero-in-degree node
    bool all_reachable = false;       // every node reachable from the source
    std::vector<int> extra_sources;   // other zero-in-degree nodes
    std::vector<int> unreachable;     // nodes not reachable from source

    bool ok() const { return acyclic && single_source && all_reachable; }
};

ValidationReport validate_dag(int n, const std::vector<Arc>& arcs, int source);

/// Deterministic Kahn topological sort, ties broken by smallest node index.
/// Throws CycleDetected if the arc set has a cycle.
std::vector<int> topo_sort(int n, const std::vector<Arc>& arcs);

/// Exception carrying the failed validation report.
struct DagInvalid : ValidationError {
    ValidationReport report;
    DagInvalid(ValidationReport r, const std::string& ctx);
};

/// Source-rooted directed acyclic graph. Instances are validated at
/// construction: acyclic, the source is the unique zero-in-degree node, and
/// every node is reachable from it. The topological order is precomputed.
class Dag {
public:
    /// Throws DagInvalid (with report) if validation fails.
    static Dag build(int n, std::vector<Arc> arcs, int source);

    int node_count() const { return n_; }
    int arc_count() const { return static_cast<int>(arcs_.size()); }
    int source() const { return source_; }
    const std::vector<Arc>& arcs() const { return arcs_; }
    const std::vector<int>& topo_order() const { return topo_order_; }

    /// Weight sums of arcs entering each node; exactly 0 at the source.
    const std::vector<double>& in_degrees() const { return in_degrees_; }

    /// Directed adjacency: entry (i, j) is the weight of arc i -> j.
    SpMat adjacency() const;

private:
    Dag(int n, std::vector<Arc> arcs, int source, std::vector<int> topo);

    int n_;
    int source_;
    std::vector<Arc> arcs_;           // sorted by (from, to)
    std::vector<int> topo_order_;
    std::vector<double> in_degrees_;
};

/// Combinatorial graph Laplacian L = D - W. Row sums are zero; L is PSD.
SpMat build_laplacian(const UndirectedGraph& g);

/// Directed graph Laplacian of a DAG: in-degree matrix minus the transposed
/// directed adjacency. Lower-triangular under topological reordering.
SpMat build_directed_laplacian(const Dag& d);

/// Minimum hop counts from s via BFS. Throws Unreachable if the graph does
/// not reach every node from s.
std::vector<int> hop_distances(const UndirectedGraph& g, int s);

}  // namespace dagdiff
