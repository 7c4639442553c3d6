#pragma once

#include <stdexcept>
#include <vector>

#include <Eigen/SparseCore>

#include "rotwave/coupling.hpp"
#include "rotwave/lattice.hpp"

namespace rotwave {

// Phases of the reduced cells 1 <= j < i <= N in reduced_indices(N) order.
struct ReducedState {
    int N = 0;
    std::vector<double> values;

    double at(LatticeIndex idx) const { return values[reduced_offset(idx, N)]; }
    double& at(LatticeIndex idx) { return values[reduced_offset(idx, N)]; }

    static ReducedState constant(int N, double value);
};

struct SolverOptions {
    double tolerance = 1e-10;   // sup norm of the residual
    long max_steps = 10'000'000;
    double dt = 0.1;
    // An accepted step may raise an entry by at most this much before it
    // counts as a monotonicity violation; absorbs roundoff only.
    double monotone_slack = 1e-13;
};

struct SolveReport {
    ReducedState state;
    double residual_inf_norm = 0.0;
    long relaxation_steps = 0;
    int newton_steps = 0;
    long monotone_violations = 0;
    long bound_violations = 0;
    double min_entry = 0.0;
    double max_entry = 0.0;
};

struct convergence_error : std::runtime_error {
    convergence_error(const std::string& what, SolveReport partial_report)
        : std::runtime_error(what), partial(std::move(partial_report)) {}
    SolveReport partial;
};

struct refinement_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Right-hand side of the reduced flow, one entry per reduced cell: the sum of
// H(neighbour - self) with the diagonal fixed at 0 and row 0 mirrored as
// pi/2 - theta_{i,1}.
std::vector<double> residual(const ReducedState& state, const CouplingFunction& H);

double residual_inf_norm(const ReducedState& state, const CouplingFunction& H);

// Jacobian of the residual. Symmetric, at most 5 entries per row: H' is even
// for odd H, so coupled cells see identical edge weights.
Eigen::SparseMatrix<double> jacobian(const ReducedState& state,
                                     const CouplingFunction& H);

// Integrates the relaxation flow from the constant pi/4 state with a classic
// fixed-step 4th-order scheme until the residual sup norm drops below
// opts.tolerance. A trial step that raises any entry is retried with a halved
// step; after 20 halvings it is accepted and counted in monotone_violations.
// Entries leaving (0, pi/4] count in bound_violations. Throws
// convergence_error (carrying the partial report) if max_steps is exhausted.
SolveReport relax_to_equilibrium(int N, const CouplingFunction& H,
                                 const SolverOptions& opts = {});

// Newton iteration with direct sparse factorization of the Jacobian.
// Throws refinement_error on a singular solve or divergence.
ReducedState newton_refine(const ReducedState& start, const CouplingFunction& H,
                           double tol = 1e-13, int max_iterations = 50,
                           int* iterations_out = nullptr);

// relax_to_equilibrium at opts.tolerance followed by newton_refine at
// newton_tol; the report carries the relaxation counters plus newton_steps.
SolveReport solve_equilibrium(int N, const CouplingFunction& H,
                              const SolverOptions& opts = {},
                              double newton_tol = 1e-13);

} // namespace rotwave
