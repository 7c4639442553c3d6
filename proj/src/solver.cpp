#include "rotwave/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include <Eigen/SparseLU>
#include <boost/numeric/odeint.hpp>

namespace rotwave {

namespace {

constexpr double kPi = std::numbers::pi;

double contribution(const ReducedState& state, double self, const NeighborRef& nb,
                    const CouplingFunction& H) {
    switch (nb.kind) {
        case NeighborKind::interior:
            return H.eval(state.at(nb.index) - self);
        case NeighborKind::diagonal_zero:
            return H.eval(-self);
        case NeighborKind::mirrored_row:
            return H.eval(kPi / 2 - state.at(nb.index) - self);
        case NeighborKind::absent:
            return 0.0;
    }
    return 0.0;
}

} // namespace

ReducedState ReducedState::constant(int N, double value) {
    return {N, std::vector<double>(reduced_size(N), value)};
}

std::vector<double> residual(const ReducedState& state, const CouplingFunction& H) {
    auto cells = reduced_indices(state.N);
    std::vector<double> out(cells.size());
    for (std::size_t k = 0; k < cells.size(); ++k) {
        double self = state.values[k];
        double sum = 0.0;
        for (const auto& nb : neighbors_reduced(cells[k], state.N))
            sum += contribution(state, self, nb, H);
        out[k] = sum;
    }
    return out;
}

double residual_inf_norm(const ReducedState& state, const CouplingFunction& H) {
    double norm = 0.0;
    for (double r : residual(state, H)) norm = std::max(norm, std::abs(r));
    return norm;
}

Eigen::SparseMatrix<double> jacobian(const ReducedState& state,
                                     const CouplingFunction& H) {
    auto cells = reduced_indices(state.N);
    auto n = static_cast<Eigen::Index>(cells.size());
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(cells.size() * 5);
    std::vector<double> diag(cells.size(), 0.0);
    for (std::size_t k = 0; k < cells.size(); ++k) {
        double self = state.values[k];
        for (const auto& nb : neighbors_reduced(cells[k], state.N)) {
            switch (nb.kind) {
                case NeighborKind::interior: {
                    // Each interior edge is evaluated once, from its lower
                    // endpoint, and the single value is written to both
                    // off-diagonal slots. H' is even, so this is exact and
                    // it makes the matrix symmetric to the bit.
                    if (nb.index.i < cells[k].i || nb.index.j < cells[k].j)
                        break;
                    double w = H.eval_derivative(state.at(nb.index) - self);
                    auto row = static_cast<Eigen::Index>(k);
                    auto col = static_cast<Eigen::Index>(
                        reduced_offset(nb.index, state.N));
                    trip.emplace_back(row, col, w);
                    trip.emplace_back(col, row, w);
                    diag[k] -= w;
                    diag[static_cast<std::size_t>(col)] -= w;
                    break;
                }
                case NeighborKind::diagonal_zero:
                    diag[k] -= H.eval_derivative(-self);
                    break;
                case NeighborKind::mirrored_row:
                    // The mirror source is the cell itself, so both arguments
                    // move with it.
                    diag[k] -= 2 * H.eval_derivative(kPi / 2 - 2 * self);
                    break;
                case NeighborKind::absent:
                    break;
            }
        }
    }
    for (std::size_t k = 0; k < cells.size(); ++k)
        trip.emplace_back(static_cast<Eigen::Index>(k),
                          static_cast<Eigen::Index>(k), diag[k]);
    Eigen::SparseMatrix<double> J(n, n);
    J.setFromTriplets(trip.begin(), trip.end());
    return J;
}

SolveReport relax_to_equilibrium(int N, const CouplingFunction& H,
                                 const SolverOptions& opts) {
    if (opts.tolerance <= 0) throw std::invalid_argument("tolerance must be > 0");
    if (opts.dt <= 0) throw std::invalid_argument("time step must be > 0");

    ReducedState state = ReducedState::constant(N, kPi / 4);
    auto rhs = [&](const std::vector<double>& y, std::vector<double>& dydt,
                   double /*t*/) {
        ReducedState s{N, y};
        dydt = residual(s, H);
    };
    boost::numeric::odeint::runge_kutta4<std::vector<double>> stepper;

    SolveReport rep;
    double t = 0.0;
    for (long step = 0; step < opts.max_steps; ++step) {
        double rnorm = residual_inf_norm(state, H);
        rep.residual_inf_norm = rnorm;
        rep.relaxation_steps = step;
        if (rnorm < opts.tolerance) {
            rep.state = std::move(state);
            auto [mn, mx] = std::minmax_element(rep.state.values.begin(),
                                                rep.state.values.end());
            rep.min_entry = *mn;
            rep.max_entry = *mx;
            return rep;
        }

        double dt = opts.dt;
        std::vector<double> trial;
        bool monotone = false;
        for (int halving = 0; halving <= 20; ++halving) {
            trial = state.values;
            stepper.do_step(rhs, trial, t, dt);
            monotone = true;
            for (std::size_t k = 0; k < trial.size(); ++k) {
                if (trial[k] > state.values[k] + opts.monotone_slack) {
                    monotone = false;
                    break;
                }
            }
            if (monotone) break;
            dt /= 2;
        }
        if (!monotone) ++rep.monotone_violations;
        for (double v : trial) {
            if (!(v > 0.0 && v <= kPi / 4)) {
                ++rep.bound_violations;
                break;
            }
        }
        state.values = std::move(trial);
        t += dt;
    }

    rep.state = std::move(state);
    auto [mn, mx] =
        std::minmax_element(rep.state.values.begin(), rep.state.values.end());
    rep.min_entry = *mn;
    rep.max_entry = *mx;
    throw convergence_error("relaxation did not reach tolerance within max_steps",
                            rep);
}

ReducedState newton_refine(const ReducedState& start, const CouplingFunction& H,
                           double tol, int max_iterations, int* iterations_out) {
    if (tol <= 0) throw std::invalid_argument("tolerance must be > 0");
    ReducedState state = start;
    auto n = static_cast<Eigen::Index>(state.values.size());
    if (iterations_out) *iterations_out = 0;

    double prev_norm = residual_inf_norm(state, H);
    for (int it = 0; it < max_iterations; ++it) {
        if (prev_norm <= tol) return state;

        Eigen::SparseMatrix<double> J = jacobian(state, H);
        Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
        lu.compute(J);
        if (lu.info() != Eigen::Success)
            throw refinement_error("newton refinement: singular jacobian");

        auto r = residual(state, H);
        Eigen::VectorXd rhs(n);
        for (Eigen::Index k = 0; k < n; ++k) rhs[k] = -r[static_cast<std::size_t>(k)];
        Eigen::VectorXd delta = lu.solve(rhs);
        if (lu.info() != Eigen::Success)
            throw refinement_error("newton refinement: linear solve failed");

        for (Eigen::Index k = 0; k < n; ++k)
            state.values[static_cast<std::size_t>(k)] += delta[k];
        if (iterations_out) ++*iterations_out;

        double norm = residual_inf_norm(state, H);
        if (norm > 10 * prev_norm && norm > tol)
            throw refinement_error("newton refinement: residual diverging");
        prev_norm = norm;
    }
    if (prev_norm <= tol) return state;
    throw refinement_error("newton refinement: no convergence within iteration cap");
}

SolveReport solve_equilibrium(int N, const CouplingFunction& H,
                              const SolverOptions& opts, double newton_tol) {
    SolveReport rep = relax_to_equilibrium(N, H, opts);
    rep.state = newton_refine(rep.state, H, newton_tol, 50, &rep.newton_steps);
    rep.residual_inf_norm = residual_inf_norm(rep.state, H);
    auto [mn, mx] =
        std::minmax_element(rep.state.values.begin(), rep.state.values.end());
    rep.min_entry = *mn;
    rep.max_entry = *mx;
    return rep;
}

} // namespace rotwave
