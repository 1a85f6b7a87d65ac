#pragma once

#include <cstdint>
#include <vector>

#include "atomforge/core/structure.hpp"
#include "atomforge/core/types.hpp"

namespace atomforge {

// One half-list entry: atoms i, j with the integer cell shift applied to j.
// r = pos[j] + shift * cell - pos[i].
struct NeighborPair {
    std::int32_t i;
    std::int32_t j;
    std::int8_t sx, sy, sz;
};

// Verlet half list. Pairs are sorted by a geometric key (positions at build
// time), and atom_order holds a position-lexicographic permutation; both make
// accumulation order independent of atom indexing, so evaluating a structure
// with two same-species atoms swapped reproduces results bit for bit.
struct NeighborList {
    std::vector<NeighborPair> pairs;
    std::vector<std::int32_t> atom_order;
    double cutoff = 0.0;
    double skin = 0.0;
    MatX3 built_positions;
    Mat3 built_cell;

    Vec3 shift_of(const NeighborPair& p) const {
        return built_cell.transpose() * Vec3(p.sx, p.sy, p.sz);
    }

    // True once any atom has moved more than skin/2 since the build.
    bool needs_rebuild(const Structure& s) const;
};

NeighborList build_neighbors(const Structure& s, double cutoff, double skin = 0.3);

} // namespace atomforge
