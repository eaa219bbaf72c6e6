#include "dagdiff/two_hop.hpp"

#include <algorithm>

namespace dagdiff {

TwoHopStructure two_hop_structure(const UndirectedGraph& g) {
    const int n = g.node_count();
    TwoHopStructure out;
    out.t_sets.resize(n);
    std::vector<char> mark(n, 0);
    for (int i = 0; i < n; ++i) {
        mark[i] = 2;
        for (const auto& nb : g.neighbors(i)) mark[nb.node] = 1;
        auto& t = out.t_sets[i];
        for (const auto& nb : g.neighbors(i))
            for (const auto& nb2 : g.neighbors(nb.node))
                if (!mark[nb2.node]) {
                    mark[nb2.node] = 3;
                    t.push_back(nb2.node);
                }
        std::sort(t.begin(), t.end());
        mark[i] = 0;
        for (const auto& nb : g.neighbors(i)) mark[nb.node] = 0;
        for (int v : t) mark[v] = 0;
    }

    std::vector<Triplet> trips;
    for (int i = 0; i < n; ++i) {
        const auto& t = out.t_sets[i];
        if (t.empty()) continue;
        const double inv = 1.0 / static_cast<double>(t.size());
        trips.emplace_back(i, i, 1.0);
        for (int v : t) {
            trips.emplace_back(v, v, inv);
            trips.emplace_back(i, v, -inv);
            trips.emplace_back(v, i, -inv);
        }
    }
    out.q = SpMat(n, n);
    out.q.setFromTriplets(trips.begin(), trips.end());
    return out;
}

}  // namespace dagdiff
