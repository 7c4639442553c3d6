#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Dense>

#include "rotwave/solver.hpp"
#include "test_support.hpp"

using namespace rotwave;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("residual closed forms on tiny wedges") {
    const auto H = CouplingFunction::sine();

    // Single cell at pi/4: two diagonal contacts give sin(-pi/4) each, the
    // mirrored row contributes sin(pi/2 - 2*(pi/4)) = 0, so the residual is
    // -sqrt(2).
    {
        ReducedState s = ReducedState::constant(2, kPi / 4);
        const auto r = residual(s, H);
        REQUIRE(r.size() == 1);
        CHECK(r[0] == doctest::Approx(-1.4142135623730951).epsilon(1e-15));
    }

    // All-zero wedge for N=3: cells bordering the mirrored row each pick up
    // sin(pi/2) = 1; the cell (3,2) sees only zeros.
    {
        ReducedState s = ReducedState::constant(3, 0.0);
        const auto r = residual(s, H);
        REQUIRE(r.size() == 3);
        CHECK(r[0] == doctest::Approx(1.0).epsilon(1e-15)); // (2,1)
        CHECK(r[1] == doctest::Approx(1.0).epsilon(1e-15)); // (3,1)
        CHECK(r[2] == doctest::Approx(0.0).epsilon(1e-15)); // (3,2)
    }

    // At the root of -2 sin(t) + cos(2t) the single-cell residual vanishes:
    // sin(pi/2 - 2t) = cos(2t).
    {
        const double root = testsupport::smallest_wedge_root();
        ReducedState s{2, {root}};
        CHECK(std::abs(residual(s, H)[0]) <= 1e-12);
    }
}

TEST_CASE("scalar bisection oracle agrees with the closed form") {
    CHECK(testsupport::smallest_wedge_root() ==
          doctest::Approx(testsupport::kSmallestWedgeClosedForm)
              .epsilon(1e-13));
    // And with the direct arcsin expression.
    CHECK(testsupport::smallest_wedge_root() ==
          doctest::Approx(std::asin((std::sqrt(3.0) - 1.0) / 2.0))
              .epsilon(1e-13));
}

TEST_CASE("jacobian of the single-cell wedge") {
    const auto H = CouplingFunction::sine();
    ReducedState s = ReducedState::constant(2, kPi / 4);
    const auto J = jacobian(s, H);
    REQUIRE(J.rows() == 1);
    // d/dt [2 sin(-t) + sin(pi/2 - 2t)] = -2 cos(t) - 2 cos(pi/2 - 2t);
    // at t = pi/4 this is -2 cos(pi/4) - 2.
    const double expected = -2.0 * std::cos(kPi / 4) - 2.0;
    CHECK(J.coeff(0, 0) == doctest::Approx(expected).epsilon(1e-15));
}

TEST_CASE("jacobian is exactly symmetric") {
    const auto H = CouplingFunction::sine();
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> d(0.01, kPi / 4);
    for (int N : {3, 5, 8}) {
        ReducedState s = ReducedState::constant(N, 0.0);
        for (auto& v : s.values) v = d(rng);
        Eigen::SparseMatrix<double> J = jacobian(s, H);
        Eigen::SparseMatrix<double> Jt = J.transpose();
        Eigen::MatrixXd diff = Eigen::MatrixXd(J) - Eigen::MatrixXd(Jt);
        CHECK(diff.cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("jacobian matches central finite differences") {
    const auto H = CouplingFunction::sine();
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> d(0.05, kPi / 4 - 0.05);
    const double h = 1e-6;
    for (int N : {3, 5}) {
        const auto n = reduced_size(N);
        for (int trial = 0; trial < 5; ++trial) {
            ReducedState s = ReducedState::constant(N, 0.0);
            for (auto& v : s.values) v = d(rng);
            Eigen::MatrixXd J = Eigen::MatrixXd(jacobian(s, H));
            for (std::size_t l = 0; l < n; ++l) {
                ReducedState sp = s, sm = s;
                sp.values[l] += h;
                sm.values[l] -= h;
                const auto rp = residual(sp, H);
                const auto rm = residual(sm, H);
                for (std::size_t k = 0; k < n; ++k) {
                    const double fd = (rp[k] - rm[k]) / (2 * h);
                    const double an = J(static_cast<Eigen::Index>(k),
                                        static_cast<Eigen::Index>(l));
                    CHECK(std::abs(fd - an) <= 1e-5 * (1.0 + std::abs(an)));
                }
            }
        }
    }
}

TEST_CASE("relaxation reaches the single-cell equilibrium monotonically") {
    const auto H = CouplingFunction::sine();
    const auto rep = relax_to_equilibrium(2, H);
    CHECK(rep.monotone_violations == 0);
    CHECK(rep.bound_violations == 0);
    CHECK(rep.residual_inf_norm < 1e-10);
    // Residual below 1e-10 against a slope of about -3.4 pins the phase to
    // a few 1e-11 of the scalar root.
    CHECK(std::abs(rep.state.values[0] - testsupport::smallest_wedge_root()) <=
          1e-9);
}

TEST_CASE("relaxation keeps iterates inside the phase bounds") {
    const auto H = CouplingFunction::sine();
    const auto rep = relax_to_equilibrium(5, H);
    CHECK(rep.monotone_violations == 0);
    CHECK(rep.bound_violations == 0);
    CHECK(rep.min_entry > 0.0);
    CHECK(rep.max_entry <= kPi / 4);
    for (double v : rep.state.values) {
        CHECK(v > 0.0);
        CHECK(v < kPi / 4);
    }
}

TEST_CASE("relaxation exhausting its step budget reports partial progress") {
    const auto H = CouplingFunction::sine();
    SolverOptions opts;
    opts.max_steps = 3;
    try {
        relax_to_equilibrium(4, H, opts);
        FAIL("expected convergence_error");
    } catch (const convergence_error& e) {
        CHECK(e.partial.relaxation_steps <= 3);
        CHECK(e.partial.state.values.size() == reduced_size(4));
        CHECK(e.partial.residual_inf_norm > 0.0);
    }
}

TEST_CASE("newton refinement polishes a nearby guess to the oracle root") {
    const auto H = CouplingFunction::sine();
    const double root = testsupport::smallest_wedge_root();

    int iters = 0;
    ReducedState guess{2, {0.37}};
    const auto refined = newton_refine(guess, H, 1e-13, 50, &iters);
    CHECK(std::abs(refined.values[0] - root) <= 1e-9);
    CHECK(iters <= 10);
    CHECK(residual_inf_norm(refined, H) <= 1e-13);

    // Starting at the root itself changes nothing measurable.
    ReducedState at_root{2, {root}};
    const auto again = newton_refine(at_root, H);
    CHECK(std::abs(again.values[0] - root) <= 1e-13);
}

TEST_CASE("newton refinement from a coarse relaxation matches a fine one") {
    const auto H = CouplingFunction::sine();
    SolverOptions coarse;
    coarse.tolerance = 1e-8;
    const auto a = solve_equilibrium(6, H, coarse, 1e-13);

    SolverOptions fine;
    fine.tolerance = 1e-13;
    const auto b = relax_to_equilibrium(6, H, fine);

    REQUIRE(a.state.values.size() == b.state.values.size());
    for (std::size_t k = 0; k < a.state.values.size(); ++k)
        CHECK(std::abs(a.state.values[k] - b.state.values[k]) <= 1e-10);
    CHECK(a.residual_inf_norm <= 1e-13);
    CHECK(a.newton_steps >= 1);
    CHECK(a.newton_steps <= 10);
}

TEST_CASE("solve_equilibrium end to end on the single cell") {
    const auto H = CouplingFunction::sine();
    const auto rep = solve_equilibrium(2, H);
    CHECK(std::abs(rep.state.values[0] - testsupport::smallest_wedge_root()) <=
          1e-12);
    CHECK(rep.residual_inf_norm <= 1e-13);
    CHECK(rep.min_entry == rep.max_entry);
}

TEST_CASE("invalid solver options are rejected") {
    const auto H = CouplingFunction::sine();
    SolverOptions opts;
    opts.tolerance = 0.0;
    CHECK_THROWS_AS(relax_to_equilibrium(3, H, opts), std::invalid_argument);
    CHECK_THROWS_AS(newton_refine(ReducedState::constant(3, 0.3), H, -1.0),
                    std::invalid_argument);
}
