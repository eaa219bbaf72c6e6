#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dagdiff/graph.hpp"

namespace dagdiff {

enum class LatticeKind {
    Lattice2d4,   // N/S/E/W
    Lattice2d8,   // adds diagonals
    Lattice2d12,  // adds axial distance-2 neighbors to the 8-connected set
    Lattice3d,    // 6-connected axial
};

LatticeKind parse_lattice_kind(const std::string& name);
std::string lattice_kind_name(LatticeKind kind);

/// Lattice description. dims is {rows, cols} for 2D kinds and {nx, ny, nz}
/// for 3D; node index is row-major (r*cols + c, resp. (x*ny + y)*nz + z).
struct LatticeSpec {
    LatticeKind kind = LatticeKind::Lattice2d4;
    std::vector<int> dims;
    std::uint64_t weight_seed = 0;
};

/// Builds the lattice topology and draws one uniform(0,1) weight per edge in
/// canonical lexicographic (i, j) order from the seeded generator.
UndirectedGraph generate_lattice(const LatticeSpec& spec);

/// Same topology, fresh uniform(0,1) weights in canonical edge order.
UndirectedGraph regenerate_weights(const UndirectedGraph& g, std::uint64_t seed);

/// Same topology with every weight set to exactly 1 (deterministic-cascade
/// and BFS-oracle fixtures).
UndirectedGraph with_unit_weights(const UndirectedGraph& g);

}  // namespace dagdiff
