#include "rotwave/lattice.hpp"

#include <cmath>
#include <stdexcept>

namespace rotwave {

std::vector<LatticeIndex> reduced_indices(int N) {
    if (N < 2) throw std::invalid_argument("reduced_indices: N must be >= 2");
    std::vector<LatticeIndex> out;
    out.reserve(reduced_size(N));
    for (int i = 2; i <= N; ++i)
        for (int j = 1; j < i; ++j)
            out.push_back({i, j});
    return out;
}

std::size_t reduced_size(int N) {
    if (N < 2) throw std::invalid_argument("reduced_size: N must be >= 2");
    return static_cast<std::size_t>(N) * (N - 1) / 2;
}

bool in_reduced(LatticeIndex idx, int N) {
    return 1 <= idx.j && idx.j < idx.i && idx.i <= N;
}

std::size_t reduced_offset(LatticeIndex idx, int N) {
    if (!in_reduced(idx, N))
        throw std::invalid_argument("reduced_offset: index outside reduced domain");
    // Rows 2..i-1 contribute 1 + 2 + ... + (i-2) cells before row i.
    auto row_start = static_cast<std::size_t>(idx.i - 2) * (idx.i - 1) / 2;
    return row_start + static_cast<std::size_t>(idx.j - 1);
}

namespace {

NeighborRef classify(LatticeIndex nb, int N) {
    if (nb.i > N) return {NeighborKind::absent, {}};
    if (nb.j == 0) return {NeighborKind::mirrored_row, {nb.i, 1}};
    if (nb.i == nb.j) return {NeighborKind::diagonal_zero, nb};
    return {NeighborKind::interior, nb};
}

} // namespace

std::array<NeighborRef, 4> neighbors_reduced(LatticeIndex idx, int N) {
    if (!in_reduced(idx, N))
        throw std::invalid_argument("neighbors_reduced: index outside reduced domain");
    return {classify({idx.i - 1, idx.j}, N), classify({idx.i + 1, idx.j}, N),
            classify({idx.i, idx.j - 1}, N), classify({idx.i, idx.j + 1}, N)};
}

int lattice_distance(LatticeIndex a, LatticeIndex b) {
    return std::abs(a.i - b.i) + std::abs(a.j - b.j);
}

} // namespace rotwave
