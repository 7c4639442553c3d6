#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "rotwave/extension.hpp"
#include "test_support.hpp"

using namespace rotwave;

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

TEST_CASE("wrapping helpers") {
    CHECK(wrap_to_pi(0.0) == 0.0);
    CHECK(wrap_to_pi(kPi) == doctest::Approx(kPi).epsilon(1e-15));
    CHECK(wrap_to_pi(-kPi) == doctest::Approx(kPi).epsilon(1e-15));
    CHECK(wrap_to_pi(3 * kPi) == doctest::Approx(kPi).epsilon(1e-12));
    CHECK(wrap_to_pi(kTwoPi + 0.25) == doctest::Approx(0.25).epsilon(1e-12));

    CHECK(wrap_to_2pi(0.0) == 0.0);
    CHECK(wrap_to_2pi(-0.1) == doctest::Approx(kTwoPi - 0.1).epsilon(1e-12));
    CHECK(wrap_to_2pi(kTwoPi) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(wrap_to_2pi(5 * kPi) == doctest::Approx(kPi).epsilon(1e-12));
}

TEST_CASE("window indexing") {
    FullState f(3);
    CHECK(f.values.size() == 36);
    CHECK(f.in_window(-2, 3));
    CHECK(f.in_window(3, -2));
    CHECK_FALSE(f.in_window(4, 0));
    CHECK_FALSE(f.in_window(0, -3));
    CHECK(f.offset(-2, -2) == 0);
    CHECK(f.offset(-2, -1) == 1);
    CHECK(f.offset(-1, -2) == 6);
    CHECK(f.offset(3, 3) == 35);
}

TEST_CASE("extension of the smallest wedge reproduces the known field") {
    const double t = testsupport::smallest_wedge_root();
    ReducedState reduced{2, {t}};
    const FullState full = extend_full(reduced);

    // Centre four cells carry the four fixed rays.
    CHECK(full.at(1, 1) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(full.at(1, 0) == doctest::Approx(kPi / 2).epsilon(1e-15));
    CHECK(full.at(0, 0) == doctest::Approx(kPi).epsilon(1e-15));
    CHECK(full.at(0, 1) == doctest::Approx(3 * kPi / 2).epsilon(1e-15));

    // Wedge cell and its mirror across the diagonal.
    CHECK(full.at(2, 1) == doctest::Approx(t).epsilon(1e-15));
    CHECK(full.at(1, 2) == doctest::Approx(kTwoPi - t).epsilon(1e-14));

    // Diagonal rays of the other quadrants.
    CHECK(full.at(2, 2) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(full.at(2, -1) == doctest::Approx(kPi / 2).epsilon(1e-14));
    CHECK(full.at(-1, -1) == doctest::Approx(kPi).epsilon(1e-14));
    CHECK(full.at(-1, 2) == doctest::Approx(3 * kPi / 2).epsilon(1e-14));
}

TEST_CASE("first ring of the smallest wedge lists twelve phases in order") {
    const double t = testsupport::smallest_wedge_root();
    ReducedState reduced{2, {t}};
    const FullState full = extend_full(reduced);

    const auto ring = ring_profile(full, 1);
    REQUIRE(ring.phases.size() == 12);

    const double expected[12] = {
        0.0,         t,           kPi / 2 - t,     kPi / 2,
        kPi / 2 + t, kPi - t,     kPi,             kPi + t,
        3 * kPi / 2 - t, 3 * kPi / 2, 3 * kPi / 2 + t, kTwoPi - t};
    for (int m = 0; m < 12; ++m)
        CHECK(ring.phases[m] == doctest::Approx(expected[m]).epsilon(1e-13));

    CHECK(ring.winding == doctest::Approx(kTwoPi).epsilon(1e-12));
}

TEST_CASE("ring profiles wind once and never step backwards") {
    const auto H = CouplingFunction::sine();
    const auto rep = solve_equilibrium(6, H);
    const FullState full = extend_full(rep.state);

    for (int k = 1; k <= 5; ++k) {
        const auto ring = ring_profile(full, k);
        CHECK(ring.phases.size() == static_cast<std::size_t>(8 * k + 4));
        CHECK(std::abs(ring.winding - kTwoPi) <= 1e-10);
        const std::size_t n = ring.phases.size();
        for (std::size_t m = 0; m < n; ++m) {
            const double step = wrap_to_pi(ring.phases[(m + 1) % n] -
                                           ring.phases[m]);
            CHECK(step >= -1e-12);
        }
    }
    CHECK_THROWS_AS(ring_profile(full, 0), std::invalid_argument);
    CHECK_THROWS_AS(ring_profile(full, 6), std::invalid_argument);
}

TEST_CASE("extended equilibria satisfy the full-window equations") {
    const auto H = CouplingFunction::sine();
    for (int N : {2, 3, 5}) {
        const auto rep = solve_equilibrium(N, H);
        const FullState full = extend_full(rep.state);
        CHECK(full_residual_inf_norm(full, H) <= 1e-8);
    }
}

TEST_CASE("full residual vanishes on a locked constant field") {
    // All phases equal: every wrapped difference is 0 and H(0) = 0.
    FullState flat(3);
    for (auto& v : flat.values) v = 1.234;
    CHECK(full_residual_inf_norm(flat, CouplingFunction::sine()) == 0.0);
}

TEST_CASE("extension applies the quarter-turn phase shifts consistently") {
    const auto H = CouplingFunction::sine();
    const auto rep = solve_equilibrium(4, H);
    const FullState full = extend_full(rep.state);

    // A quarter turn about the window centre maps (i,j) to (j, 1-i) and adds
    // pi/2 to the phase.
    for (int i = 1 - 4; i <= 4; ++i) {
        for (int j = 1 - 4; j <= 4; ++j) {
            const double rotated = full.at(j, 1 - i);
            const double shifted = wrap_to_2pi(full.at(i, j) + kPi / 2);
            CHECK(std::abs(wrap_to_pi(rotated - shifted)) <= 1e-12);
        }
    }

    // Mirroring across the main diagonal negates the phase.
    for (int i = 1 - 4; i <= 4; ++i) {
        for (int j = 1 - 4; j <= 4; ++j) {
            const double mirrored = full.at(j, i);
            CHECK(std::abs(wrap_to_pi(mirrored + full.at(i, j))) <= 1e-12);
        }
    }
}

TEST_CASE("all extended values lie in the principal interval") {
    const auto rep = solve_equilibrium(5, CouplingFunction::sine());
    const FullState full = extend_full(rep.state);
    for (double v : full.values) {
        CHECK(v >= 0.0);
        CHECK(v < kTwoPi);
    }
}
