#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <vector>

namespace rotwave {

struct LatticeIndex {
    int i = 0;
    int j = 0;
    friend bool operator==(const LatticeIndex&, const LatticeIndex&) = default;
    friend auto operator<=>(const LatticeIndex&, const LatticeIndex&) = default;
};

// Reduced domain: cells 1 <= j < i <= N, row-major in (i, j).
// This order is the vector layout everywhere, including on disk.
std::vector<LatticeIndex> reduced_indices(int N);

std::size_t reduced_size(int N);

bool in_reduced(LatticeIndex idx, int N);

// Position of idx in reduced_indices(N). Precondition: in_reduced(idx, N).
std::size_t reduced_offset(LatticeIndex idx, int N);

enum class NeighborKind {
    interior,       // another reduced cell
    diagonal_zero,  // diagonal cell (k, k), phase fixed at 0
    mirrored_row,   // row j = 0, phase pi/2 - theta at the carried source cell
    absent,         // outside the lattice
};

struct NeighborRef {
    NeighborKind kind = NeighborKind::absent;
    // interior: the reduced cell. diagonal_zero: the diagonal cell.
    // mirrored_row: the source cell (i, 1) whose value defines the mirror.
    // absent: undefined.
    LatticeIndex index{};
};

// The four candidate neighbours (i-1,j), (i+1,j), (i,j-1), (i,j+1), in that
// order, classified. Always 4 entries counting absent ones.
std::array<NeighborRef, 4> neighbors_reduced(LatticeIndex idx, int N);

// Minimal number of nearest-neighbour steps between two cells (L1 distance).
int lattice_distance(LatticeIndex a, LatticeIndex b);

} // namespace rotwave

template <>
struct std::hash<rotwave::LatticeIndex> {
    std::size_t operator()(const rotwave::LatticeIndex& idx) const noexcept {
        return std::hash<long long>{}((static_cast<long long>(idx.i) << 32) ^
                                      static_cast<unsigned>(idx.j));
    }
};
