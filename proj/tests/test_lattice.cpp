#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "rotwave/lattice.hpp"

using namespace rotwave;

TEST_CASE("reduced index set size and order") {
    CHECK(reduced_size(2) == 1);
    CHECK(reduced_size(3) == 3);
    CHECK(reduced_size(4) == 6);
    CHECK(reduced_size(10) == 45);

    const auto idx2 = reduced_indices(2);
    REQUIRE(idx2.size() == 1);
    CHECK(idx2[0] == LatticeIndex{2, 1});

    const auto idx3 = reduced_indices(3);
    REQUIRE(idx3.size() == 3);
    CHECK(idx3[0] == LatticeIndex{2, 1});
    CHECK(idx3[1] == LatticeIndex{3, 1});
    CHECK(idx3[2] == LatticeIndex{3, 2});

    // Row-major: i ascending, j ascending within a row.
    const auto idx8 = reduced_indices(8);
    for (std::size_t k = 1; k < idx8.size(); ++k) {
        const bool ordered = idx8[k - 1].i < idx8[k].i ||
                             (idx8[k - 1].i == idx8[k].i &&
                              idx8[k - 1].j < idx8[k].j);
        CHECK(ordered);
    }
}

TEST_CASE("reduced_offset matches enumeration position") {
    for (int N : {2, 3, 5, 9, 14}) {
        const auto idx = reduced_indices(N);
        for (std::size_t k = 0; k < idx.size(); ++k) {
            CHECK(reduced_offset(idx[k], N) == k);
            CHECK(in_reduced(idx[k], N));
        }
    }
    CHECK_FALSE(in_reduced(LatticeIndex{1, 1}, 5));
    CHECK_FALSE(in_reduced(LatticeIndex{3, 3}, 5));
    CHECK_FALSE(in_reduced(LatticeIndex{6, 2}, 5));
    CHECK_FALSE(in_reduced(LatticeIndex{4, 0}, 5));
}

namespace {

// Collects neighbour classifications of one cell into sorted kind counts
// plus the set of interior sources, so checks are order independent.
struct NeighborSummary {
    int interior = 0;
    int diagonal_zero = 0;
    int mirrored_row = 0;
    int absent = 0;
    std::set<LatticeIndex> interior_cells;
    std::set<LatticeIndex> mirror_sources;
};

NeighborSummary summarize(const LatticeIndex& c, int N) {
    NeighborSummary s;
    for (const auto& nb : neighbors_reduced(c, N)) {
        switch (nb.kind) {
            case NeighborKind::interior:
                ++s.interior;
                s.interior_cells.insert(nb.index);
                break;
            case NeighborKind::diagonal_zero:
                ++s.diagonal_zero;
                break;
            case NeighborKind::mirrored_row:
                ++s.mirrored_row;
                s.mirror_sources.insert(nb.index);
                break;
            case NeighborKind::absent:
                ++s.absent;
                break;
        }
    }
    return s;
}

} // namespace

TEST_CASE("neighbour classification for the smallest wedge") {
    // N=2 has the single cell (2,1): left and up touch the zero diagonal,
    // down is the mirror image of the cell itself, right leaves the wedge.
    const auto s = summarize(LatticeIndex{2, 1}, 2);
    CHECK(s.interior == 0);
    CHECK(s.diagonal_zero == 2);
    CHECK(s.mirrored_row == 1);
    CHECK(s.absent == 1);
    REQUIRE(s.mirror_sources.size() == 1);
    CHECK(*s.mirror_sources.begin() == LatticeIndex{2, 1});
}

TEST_CASE("neighbour classification in a larger wedge") {
    // (3,1) in N=4: (2,1) and (4,1) interior, (3,0) mirrored to (3,1),
    // (3,2) interior.
    {
        const auto s = summarize(LatticeIndex{3, 1}, 4);
        CHECK(s.interior == 3);
        CHECK(s.mirrored_row == 1);
        CHECK(s.diagonal_zero == 0);
        CHECK(s.absent == 0);
        CHECK(s.interior_cells ==
              std::set<LatticeIndex>{{2, 1}, {4, 1}, {3, 2}});
        CHECK(*s.mirror_sources.begin() == LatticeIndex{3, 1});
    }
    // (4,3) in N=4: up neighbour (4,4) on the zero diagonal, down
    // neighbour... candidates are (3,3) diagonal, (5,3) absent, (4,2)
    // interior, (4,4) diagonal.
    {
        const auto s = summarize(LatticeIndex{4, 3}, 4);
        CHECK(s.interior == 1);
        CHECK(s.diagonal_zero == 2);
        CHECK(s.mirrored_row == 0);
        CHECK(s.absent == 1);
        CHECK(s.interior_cells == std::set<LatticeIndex>{{4, 2}});
    }
    // Fully interior cell (4,2) in N=5.
    {
        const auto s = summarize(LatticeIndex{4, 2}, 5);
        CHECK(s.interior == 4);
        CHECK(s.interior_cells ==
              std::set<LatticeIndex>{{3, 2}, {5, 2}, {4, 1}, {4, 3}});
    }
}

TEST_CASE("neighbour kinds follow wedge geometry") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const int N = 2 + static_cast<int>(rng() % 12);
        const auto idx = reduced_indices(N);
        const auto& c = idx[rng() % idx.size()];
        const auto s = summarize(c, N);

        CHECK(s.interior + s.diagonal_zero + s.mirrored_row + s.absent == 4);
        CHECK(s.mirrored_row == (c.j == 1 ? 1 : 0));
        CHECK(s.absent == (c.i == N ? 1 : 0));
        // Only the left (i-1,j) and up (i,j+1) candidates can land on the
        // zero diagonal, and both do exactly when j == i-1.
        CHECK(s.diagonal_zero == (c.j + 1 == c.i ? 2 : 0));

        for (const auto& nb : s.interior_cells) {
            CHECK(in_reduced(nb, N));
            CHECK(lattice_distance(c, nb) == 1);
        }
    }
}

TEST_CASE("lattice distance") {
    CHECK(lattice_distance({1, 0}, {2, 2}) == 3);
    CHECK(lattice_distance({0, 0}, {0, 0}) == 0);
    CHECK(lattice_distance({-3, 4}, {4, -3}) == 14);

    std::mt19937 rng(11);
    std::uniform_int_distribution<int> d(-20, 20);
    for (int t = 0; t < 200; ++t) {
        const LatticeIndex a{d(rng), d(rng)};
        const LatticeIndex b{d(rng), d(rng)};
        const LatticeIndex c{d(rng), d(rng)};
        CHECK(lattice_distance(a, b) == lattice_distance(b, a));
        CHECK(lattice_distance(a, c) <=
              lattice_distance(a, b) + lattice_distance(b, c));
        CHECK((lattice_distance(a, b) == 0) == (a == b));
    }
}
