#include "dagdiff/graph.hpp"

#include <algorithm>
#include <deque>
#include <queue>

namespace dagdiff {

UndirectedGraph::UndirectedGraph(int n, std::vector<Edge> edges)
    : n_(n), edges_(std::move(edges)) {
    if (n_ <= 0) throw ValidationError("graph must have at least one node");
    for (auto& e : edges_) {
        if (e.i > e.j) std::swap(e.i, e.j);
        if (e.i < 0 || e.j >= n_)
            throw ValidationError("edge endpoint out of range: (" + std::to_string(e.i) +
                                  ", " + std::to_string(e.j) + ")");
        if (e.i == e.j)
            throw ValidationError("self-loop at node " + std::to_string(e.i));
        if (!(e.w > 0.0) || e.w > 1.0)
            throw ValidationError("edge weight must be in (0, 1], got " + std::to_string(e.w));
    }
    std::sort(edges_.begin(), edges_.end(),
              [](const Edge& a, const Edge& b) { return std::tie(a.i, a.j) < std::tie(b.i, b.j); });
    for (std::size_t k = 1; k < edges_.size(); ++k)
        if (edges_[k].i == edges_[k - 1].i && edges_[k].j == edges_[k - 1].j)
            throw ValidationError("duplicate edge (" + std::to_string(edges_[k].i) + ", " +
                                  std::to_string(edges_[k].j) + ")");

    std::vector<int> counts(n_, 0);
    for (const auto& e : edges_) {
        ++counts[e.i];
        ++counts[e.j];
    }
    offsets_.assign(n_ + 1, 0);
    for (int i = 0; i < n_; ++i) offsets_[i + 1] = offsets_[i] + counts[i];
    adjacency_.resize(offsets_[n_]);
    std::vector<int> cursor(offsets_.begin(), offsets_.end() - 1);
    for (const auto& e : edges_) {
        adjacency_[cursor[e.i]++] = {e.j, e.w};
        adjacency_[cursor[e.j]++] = {e.i, e.w};
    }
    for (int i = 0; i < n_; ++i)
        std::sort(adjacency_.begin() + offsets_[i], adjacency_.begin() + offsets_[i + 1],
                  [](const Neighbor& a, const Neighbor& b) { return a.node < b.node; });
    degrees_.assign(n_, 0.0);
    for (int i = 0; i < n_; ++i)
        for (const auto& nb : neighbors(i)) degrees_[i] += nb.w;
}

double UndirectedGraph::weight(int i, int j) const {
    if (i == j) return 0.0;
    auto span = neighbors(i);
    auto it = std::lower_bound(span.begin(), span.end(), j,
                               [](const Neighbor& nb, int v) { return nb.node < v; });
    return (it != span.end() && it->node == j) ? it->w : 0.0;
}

bool UndirectedGraph::is_connected() const {
    std::vector<char> seen(n_, 0);
    std::deque<int> queue{0};
    seen[0] = 1;
    int visited = 1;
    while (!queue.empty()) {
        int u = queue.front();
        queue.pop_front();
        for (const auto& nb : neighbors(u))
            if (!seen[nb.node]) {
                seen[nb.node] = 1;
                ++visited;
                queue.push_back(nb.node);
            }
    }
    return visited == n_;
}

void UndirectedGraph::require_connected() const {
    std::vector<char> seen(n_, 0);
    std::deque<int> queue{0};
    seen[0] = 1;
    while (!queue.empty()) {
        int u = queue.front();
        queue.pop_front();
        for (const auto& nb : neighbors(u))
            if (!seen[nb.node]) {
                seen[nb.node] = 1;
                queue.push_back(nb.node);
            }
    }
    std::vector<int> missing;
    for (int i = 0; i < n_; ++i)
        if (!seen[i]) missing.push_back(i);
    if (!missing.empty()) throw DisconnectedGraph(std::move(missing));
}

std::vector<int> topo_sort(int n, const std::vector<Arc>& arcs) {
    std::vector<int> indeg(n, 0);
    std::vector<std::vector<int>> out(n);
    for (const auto& a : arcs) {
        ++indeg[a.to];
        out[a.from].push_back(a.to);
    }
    std::priority_queue<int, std::vector<int>, std::greater<>> ready;
    for (int i = 0; i < n; ++i)
        if (indeg[i] == 0) ready.push(i);
    std::vector<int> order;
    order.reserve(n);
    while (!ready.empty()) {
        int u = ready.top();
        ready.pop();
        order.push_back(u);
        for (int v : out[u])
            if (--indeg[v] == 0) ready.push(v);
    }
    if (static_cast<int>(order.size()) != n) throw CycleDetected();
    return order;
}

ValidationReport validate_dag(int n, const std::vector<Arc>& arcs, int source) {
    ValidationReport rep;
    try {
        topo_sort(n, arcs);
        rep.acyclic = true;
    } catch (const CycleDetected&) {
        rep.acyclic = false;
    }

    std::vector<int> indeg(n, 0);
    std::vector<std::vector<int>> out(n);
    for (const auto& a : arcs) {
        ++indeg[a.to];
        out[a.from].push_back(a.to);
    }
    for (int i = 0; i < n; ++i)
        if (indeg[i] == 0 && i != source) rep.extra_sources.push_back(i);
    rep.single_source = rep.extra_sources.empty() && indeg[source] == 0;

    std::vector<char> seen(n, 0);
    std::deque<int> queue{source};
    seen[source] = 1;
    while (!queue.empty()) {
        int u = queue.front();
        queue.pop_front();
        for (int v : out[u])
            if (!seen[v]) {
                seen[v] = 1;
                queue.push_back(v);
            }
    }
    for (int i = 0; i < n; ++i)
        if (!seen[i]) rep.unreachable.push_back(i);
    rep.all_reachable = rep.unreachable.empty();
    return rep;
}

namespace {

std::string summarize(const ValidationReport& rep) {
    std::string s = "DAG validation failed:";
    if (!rep.acyclic) s += " contains a directed cycle;";
    if (!rep.single_source) {
        s += " extra zero-in-degree nodes {";
        for (std::size_t i = 0; i < rep.extra_sources.size() && i < 8; ++i) {
            if (i) s += ", ";
            s += std::to_string(rep.extra_sources[i]);
        }
        s += "};";
    }
    if (!rep.all_reachable) {
        s += " unreachable nodes {";
        for (std::size_t i = 0; i < rep.unreachable.size() && i < 8; ++i) {
            if (i) s += ", ";
            s += std::to_string(rep.unreachable[i]);
        }
        s += "};";
    }
    return s;
}

}  // namespace

DagInvalid::DagInvalid(ValidationReport r, const std::string& ctx)
    : ValidationError(ctx.empty() ? summarize(r) : ctx + ": " + summarize(r)),
      report(std::move(r)) {}

Dag::Dag(int n, std::vector<Arc> arcs, int source, std::vector<int> topo)
    : n_(n), source_(source), arcs_(std::move(arcs)), topo_order_(std::move(topo)) {
    in_degrees_.assign(n_, 0.0);
    for (const auto& a : arcs_) in_degrees_[a.to] += a.w;
}

Dag Dag::build(int n, std::vector<Arc> arcs, int source) {
    if (n <= 0) throw ValidationError("DAG must have at least one node");
    if (source < 0 || source >= n)
        throw ValidationError("source index out of range: " + std::to_string(source));
    for (const auto& a : arcs) {
        if (a.from < 0 || a.from >= n || a.to < 0 || a.to >= n)
            throw ValidationError("arc endpoint out of range");
        if (a.from == a.to) throw ValidationError("self-arc at node " + std::to_string(a.from));
        if (!(a.w > 0.0)) throw ValidationError("arc weight must be positive");
    }
    std::sort(arcs.begin(), arcs.end(), [](const Arc& a, const Arc& b) {
        return std::tie(a.from, a.to) < std::tie(b.from, b.to);
    });
    for (std::size_t k = 1; k < arcs.size(); ++k)
        if (arcs[k].from == arcs[k - 1].from && arcs[k].to == arcs[k - 1].to)
            throw ValidationError("duplicate arc (" + std::to_string(arcs[k].from) + " -> " +
                                  std::to_string(arcs[k].to) + ")");

    ValidationReport rep = validate_dag(n, arcs, source);
    if (!rep.ok()) throw DagInvalid(std::move(rep), "");
    std::vector<int> topo = topo_sort(n, arcs);
    return Dag(n, std::move(arcs), source, std::move(topo));
}

SpMat Dag::adjacency() const {
    std::vector<Triplet> trips;
    trips.reserve(arcs_.size());
    for (const auto& a : arcs_) trips.emplace_back(a.from, a.to, a.w);
    SpMat w(n_, n_);
    w.setFromTriplets(trips.begin(), trips.end());
    return w;
}

SpMat build_laplacian(const UndirectedGraph& g) {
    const int n = g.node_count();
    std::vector<Triplet> trips;
    trips.reserve(2 * g.edge_count() + n);
    for (const auto& e : g.edges()) {
        trips.emplace_back(e.i, e.j, -e.w);
        trips.emplace_back(e.j, e.i, -e.w);
    }
    for (int i = 0; i < n; ++i) trips.emplace_back(i, i, g.degree(i));
    SpMat l(n, n);
    l.setFromTriplets(trips.begin(), trips.end());
    return l;
}

SpMat build_directed_laplacian(const Dag& d) {
    const int n = d.node_count();
    std::vector<Triplet> trips;
    trips.reserve(d.arc_count() + n);
    for (const auto& a : d.arcs()) trips.emplace_back(a.to, a.from, -a.w);
    const auto& indeg = d.in_degrees();
    for (int i = 0; i < n; ++i)
        if (indeg[i] != 0.0) trips.emplace_back(i, i, indeg[i]);
    SpMat l(n, n);
    l.setFromTriplets(trips.begin(), trips.end());
    return l;
}

std::vector<int> hop_distances(const UndirectedGraph& g, int s) {
    const int n = g.node_count();
    if (s < 0 || s >= n) throw ValidationError("source index out of range");
    std::vector<int> hops(n, -1);
    std::deque<int> queue{s};
    hops[s] = 0;
    while (!queue.empty()) {
        int u = queue.front();
        queue.pop_front();
        for (const auto& nb : g.neighbors(u))
            if (hops[nb.node] < 0) {
                hops[nb.node] = hops[u] + 1;
                queue.push_back(nb.node);
            }
    }
    for (int i = 0; i < n; ++i)
        if (hops[i] < 0) throw Unreachable(i);
    return hops;
}

}  // namespace dagdiff
