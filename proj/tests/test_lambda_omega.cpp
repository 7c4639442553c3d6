#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "rotwave/lambda_omega.hpp"
#include "rotwave/solver.hpp"

using namespace rotwave;

namespace {

constexpr double kPi = std::numbers::pi;

// Modulus of an uncoupled cell started at r0: the radial equation
// r' = r (1 - r^2) integrates to r(t) = r0 / sqrt(r0^2 + (1 - r0^2) e^(-2t)).
double radial_closed_form(double r0, double t) {
    return r0 / std::sqrt(r0 * r0 + (1.0 - r0 * r0) * std::exp(-2.0 * t));
}

} // namespace

TEST_CASE("uncoupled cells follow the radial closed form") {
    ComplexLatticeState init(2, 0.0, 1.0);
    for (auto& v : init.z) v = std::complex<double>(0.5, 0.0);

    const auto traj = simulate(init, 5.0, 0.5);
    REQUIRE(traj.size() == 11);
    for (std::size_t k = 0; k < traj.size(); ++k) {
        const double t = traj.time(k);
        const double expected = radial_closed_form(0.5, t);
        const auto state = traj.state(k);
        for (const auto& z : state.z)
            CHECK(std::abs(std::abs(z) - expected) <= 1e-6);
    }
}

TEST_CASE("on the unit circle the motion is a rigid rotation at omega") {
    const double omega = 0.7;
    ComplexLatticeState init(2, 0.0, omega);
    const double theta0 = 0.3;
    for (auto& v : init.z) v = std::polar(1.0, theta0);

    const auto traj = simulate(init, 4.0, 1.0);
    for (std::size_t k = 0; k < traj.size(); ++k) {
        const auto polar = polar_decompose(traj.state(k), traj.time(k));
        for (double r : polar.r) CHECK(std::abs(r - 1.0) <= 1e-7);
        // In the frame co-rotating at omega the phase never moves.
        for (double th : polar.theta)
            CHECK(std::abs(wrap_to_pi(th - theta0)) <= 1e-6);
    }
}

TEST_CASE("polar decomposition accepts an explicit frame frequency") {
    ComplexLatticeState state(2, 0.0, 1.0);
    for (auto& v : state.z) v = std::polar(2.0, 0.5);
    const auto fixed = polar_decompose(state, 1.0, 0.0);
    for (double th : fixed.theta) CHECK(th == doctest::Approx(0.5));
    const auto rotated = polar_decompose(state, 1.0, 0.5);
    for (double th : rotated.theta) CHECK(th == doctest::Approx(0.0));
    for (double r : fixed.r) CHECK(r == doctest::Approx(2.0));
}

TEST_CASE("a state beyond the amplitude guard stops the simulation") {
    ComplexLatticeState init(2, 0.1, 1.0);
    for (auto& v : init.z) v = std::complex<double>(11.0, 0.0);
    CHECK_THROWS_AS(simulate(init, 1.0, 0.5), instability_error);
}

TEST_CASE("vanishing moduli cannot be decomposed") {
    ComplexLatticeState state(2, 0.0, 1.0);
    CHECK_THROWS_AS(polar_decompose(state, 0.0), decomposition_error);
}

TEST_CASE("simulation is deterministic") {
    ComplexLatticeState init(3, 0.05, 1.0);
    for (int i = 1 - 3; i <= 3; ++i)
        for (int j = 1 - 3; j <= 3; ++j)
            init.at(i, j) = std::polar(1.0, 0.1 * (i + 2 * j));

    const auto a = simulate(init, 3.0, 1.0);
    const auto b = simulate(init, 3.0, 1.0);
    REQUIRE(a.size() == b.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
        const auto sa = a.state(k);
        const auto sb = b.state(k);
        for (std::size_t m = 0; m < sa.z.size(); ++m)
            CHECK(sa.z[m] == sb.z[m]);
    }
}

TEST_CASE("weak coupling stays near the phase reduction") {
    const auto H = CouplingFunction::sine();
    const auto eq = extend_full(solve_equilibrium(3, H).state);

    const auto strong = reduction_error(0.2, 1.0, eq, 30.0);
    const auto weak = reduction_error(0.1, 1.0, eq, 30.0);

    CHECK(strong.max_amplitude_deviation > 0.0);
    CHECK(strong.max_amplitude_deviation < 0.5);
    CHECK(weak.max_amplitude_deviation < strong.max_amplitude_deviation);
    CHECK(weak.max_phase_drift < strong.max_phase_drift);
    CHECK(strong.alpha == 0.2);
    CHECK(strong.omega == 1.0);
    CHECK(strong.T == 30.0);
}
