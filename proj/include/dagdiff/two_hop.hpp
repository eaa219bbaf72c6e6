#pragma once

#include <vector>

#include "dagdiff/graph.hpp"
#include "dagdiff/linalg.hpp"

namespace dagdiff {

/// Disconnected two-hop neighborhoods and the repulsion matrix they induce.
/// T_i holds the nodes reachable in exactly two hops from i that are neither
/// i itself nor 1-hop neighbors of i. Each nonempty T_i contributes a star
/// Laplacian centered at i scaled by 1/|T_i|; Q is the sum of those
/// contributions, so Q is symmetric, Q·1 = 0 and Q is PSD.
struct TwoHopStructure {
    std::vector<std::vector<int>> t_sets;  // T_i, sorted ascending
    SpMat q;

    int t_count(int i) const { return static_cast<int>(t_sets[i].size()); }
};

TwoHopStructure two_hop_structure(const UndirectedGraph& g);

}  // namespace dagdiff
