#pragma once

// Shared fixtures and independent reference computations for the test
// binaries. Everything here is deliberately naive (dense, quadratic, brute
// force) so it cannot share bugs with the library implementations.

#include <unistd.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "dagdiff/graph.hpp"
#include "dagdiff/linalg.hpp"

namespace oracles {

using dagdiff::Edge;
using dagdiff::Mat;
using dagdiff::SpMat;
using dagdiff::UndirectedGraph;
using dagdiff::Vec;

/// 15-node triangular mesh: rows of 1..5 nodes, 20 slanted + 10 horizontal
/// unit-weight edges.
inline UndirectedGraph triangle_mesh() {
    std::vector<Edge> edges;
    auto id = [](int r, int i) { return r * (r + 1) / 2 + i; };
    for (int r = 0; r < 4; ++r)
        for (int i = 0; i <= r; ++i) {
            edges.push_back({id(r, i), id(r + 1, i), 1.0});
            edges.push_back({id(r, i), id(r + 1, i + 1), 1.0});
        }
    for (int r = 1; r < 5; ++r)
        for (int i = 0; i < r; ++i) edges.push_back({id(r, i), id(r, i + 1), 1.0});
    return UndirectedGraph(15, edges);
}

inline UndirectedGraph path_graph(int n, double w = 1.0) {
    std::vector<Edge> edges;
    for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1, w});
    return UndirectedGraph(n, edges);
}

/// Random connected graph: a random spanning tree plus `extra` random edges,
/// weights uniform in (lo, hi].
inline UndirectedGraph random_connected_graph(int n, int extra, std::uint64_t seed,
                                              double lo = 0.05, double hi = 1.0) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uw(lo, hi);
    std::vector<Edge> edges;
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), rng);
    for (int i = 1; i < n; ++i) {
        std::uniform_int_distribution<int> up(0, i - 1);
        int a = order[up(rng)], b = order[i];
        edges.push_back({std::min(a, b), std::max(a, b), uw(rng)});
    }
    auto has_edge = [&](int a, int b) {
        for (const auto& e : edges)
            if (e.i == std::min(a, b) && e.j == std::max(a, b)) return true;
        return false;
    };
    std::uniform_int_distribution<int> un(0, n - 1);
    for (int tries = 0, added = 0; added < extra && tries < 50 * extra; ++tries) {
        int a = un(rng), b = un(rng);
        if (a == b || has_edge(a, b)) continue;
        edges.push_back({std::min(a, b), std::max(a, b), uw(rng)});
        ++added;
    }
    return UndirectedGraph(n, edges);
}

/// All-pairs unweighted hop counts by Floyd-Warshall; -1 where unreachable.
inline std::vector<std::vector<int>> floyd_warshall_hops(const UndirectedGraph& g) {
    const int n = g.node_count();
    const int inf = 1 << 28;
    std::vector<std::vector<int>> d(n, std::vector<int>(n, inf));
    for (int i = 0; i < n; ++i) d[i][i] = 0;
    for (int i = 0; i < n; ++i)
        for (auto nb : g.neighbors(i)) d[i][nb.node] = 1;
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
    for (auto& row : d)
        for (auto& v : row)
            if (v >= inf) v = -1;
    return d;
}

/// Brute-force disconnected two-hop sets from the all-pairs hop matrix.
inline std::vector<std::vector<int>> brute_two_hop_sets(const UndirectedGraph& g) {
    auto hops = floyd_warshall_hops(g);
    std::vector<std::vector<int>> t(g.node_count());
    for (int i = 0; i < g.node_count(); ++i)
        for (int j = 0; j < g.node_count(); ++j)
            if (hops[i][j] == 2) t[i].push_back(j);
    return t;
}

inline Mat dense(const SpMat& a) { return Mat(a); }

/// Coefficient of variation of latent edge lengths (1-hop latent distances).
inline double edge_length_cv(const UndirectedGraph& g, const Mat& p) {
    std::vector<double> d;
    for (int i = 0; i < g.node_count(); ++i)
        for (auto nb : g.neighbors(i))
            if (nb.node > i) d.push_back((p.row(i) - p.row(nb.node)).norm());
    double mean = 0, var = 0;
    for (double v : d) mean += v;
    mean /= static_cast<double>(d.size());
    for (double v : d) var += (v - mean) * (v - mean);
    return std::sqrt(var / static_cast<double>(d.size())) / mean;
}

/// RAII temp directory for file round-trip tests.
struct TempDir {
    std::filesystem::path path;

    explicit TempDir(const std::string& tag) {
        path = std::filesystem::temp_directory_path() /
               ("dagdiff_test_" + tag + "_" + std::to_string(::getpid()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path, ec);
    }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

}  // namespace oracles
