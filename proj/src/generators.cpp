#include "dagdiff/generators.hpp"

#include <algorithm>

#include "dagdiff/rng.hpp"

namespace dagdiff {

LatticeKind parse_lattice_kind(const std::string& name) {
    if (name == "lattice2d-4") return LatticeKind::Lattice2d4;
    if (name == "lattice2d-8") return LatticeKind::Lattice2d8;
    if (name == "lattice2d-12") return LatticeKind::Lattice2d12;
    if (name == "lattice3d") return LatticeKind::Lattice3d;
    throw ValidationError("unknown lattice kind '" + name + "'");
}

std::string lattice_kind_name(LatticeKind kind) {
    switch (kind) {
        case LatticeKind::Lattice2d4: return "lattice2d-4";
        case LatticeKind::Lattice2d8: return "lattice2d-8";
        case LatticeKind::Lattice2d12: return "lattice2d-12";
        case LatticeKind::Lattice3d: return "lattice3d";
    }
    throw ValidationError("unknown lattice kind");
}

namespace {

// Neighbor offsets per kind; distance-2 axial steps extend the 8-neighborhood
// to the 12-neighborhood.
std::vector<std::pair<int, int>> offsets_2d(LatticeKind kind) {
    std::vector<std::pair<int, int>> off = {{0, 1}, {1, 0}};
    if (kind == LatticeKind::Lattice2d8 || kind == LatticeKind::Lattice2d12) {
        off.emplace_back(1, 1);
        off.emplace_back(1, -1);
    }
    if (kind == LatticeKind::Lattice2d12) {
        off.emplace_back(0, 2);
        off.emplace_back(2, 0);
    }
    return off;
}

std::vector<std::pair<int, int>> topology_edges(const LatticeSpec& spec) {
    std::vector<std::pair<int, int>> pairs;
    if (spec.kind == LatticeKind::Lattice3d) {
        if (spec.dims.size() != 3) throw BadDims("lattice3d needs dims nx x ny x nz");
        const int nx = spec.dims[0], ny = spec.dims[1], nz = spec.dims[2];
        if (nx <= 0 || ny <= 0 || nz <= 0) throw BadDims("lattice dims must be positive");
        if (static_cast<long long>(nx) * ny * nz > 1'000'000) throw BadDims("lattice too large");
        auto id = [&](int x, int y, int z) { return (x * ny + y) * nz + z; };
        for (int x = 0; x < nx; ++x)
            for (int y = 0; y < ny; ++y)
                for (int z = 0; z < nz; ++z) {
                    if (x + 1 < nx) pairs.emplace_back(id(x, y, z), id(x + 1, y, z));
                    if (y + 1 < ny) pairs.emplace_back(id(x, y, z), id(x, y + 1, z));
                    if (z + 1 < nz) pairs.emplace_back(id(x, y, z), id(x, y, z + 1));
                }
    } else {
        if (spec.dims.size() != 2) throw BadDims("2D lattices need dims rows x cols");
        const int rows = spec.dims[0], cols = spec.dims[1];
        if (rows <= 0 || cols <= 0) throw BadDims("lattice dims must be positive");
        if (static_cast<long long>(rows) * cols > 1'000'000) throw BadDims("lattice too large");
        auto id = [&](int r, int c) { return r * cols + c; };
        for (int r = 0; r < rows; ++r)
            for (int c = 0; c < cols; ++c)
                for (auto [dr, dc] : offsets_2d(spec.kind)) {
                    int r2 = r + dr, c2 = c + dc;
                    if (r2 < 0 || r2 >= rows || c2 < 0 || c2 >= cols) continue;
                    int a = id(r, c), b = id(r2, c2);
                    pairs.emplace_back(std::min(a, b), std::max(a, b));
                }
    }
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    return pairs;
}

}  // namespace

UndirectedGraph generate_lattice(const LatticeSpec& spec) {
    auto pairs = topology_edges(spec);
    int n = 1;
    for (int d : spec.dims) n *= d;
    Rng rng(spec.weight_seed);
    std::vector<Edge> edges;
    edges.reserve(pairs.size());
    for (auto [i, j] : pairs) edges.push_back({i, j, rng.uniform_open01()});
    return UndirectedGraph(n, std::move(edges));
}

UndirectedGraph regenerate_weights(const UndirectedGraph& g, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<Edge> edges = g.edges();  // already in canonical (i, j) order
    for (auto& e : edges) e.w = rng.uniform_open01();
    return UndirectedGraph(g.node_count(), std::move(edges));
}

UndirectedGraph with_unit_weights(const UndirectedGraph& g) {
    std::vector<Edge> edges = g.edges();
    for (auto& e : edges) e.w = 1.0;
    return UndirectedGraph(g.node_count(), std::move(edges));
}

}  // namespace dagdiff
