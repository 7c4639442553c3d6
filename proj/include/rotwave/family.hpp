#pragma once

#include <vector>

#include "rotwave/coupling.hpp"
#include "rotwave/solver.hpp"

namespace rotwave {

struct EquilibriumFamily {
    int Nmin = 0;
    int Nmax = 0;
    double tolerance = 0.0;  // residual sup norm bound met by every member
    std::vector<SolveReport> members;  // sizes Nmin..Nmax in order

    const SolveReport& at(int N) const { return members.at(N - Nmin); }
};

// Solves sizes Nmin..Nmax independently (relaxation + newton polish at
// newton_tol). Solver errors propagate annotated with the failing N.
EquilibriumFamily solve_family(int Nmin, int Nmax, const CouplingFunction& H,
                               const SolverOptions& opts = {},
                               double newton_tol = 1e-13);

// A violated ordering between two cells: expected value(lower) <= value(upper)
// up to the slack.
struct PairViolation {
    LatticeIndex lower{};
    LatticeIndex upper{};
    double lower_value = 0.0;
    double upper_value = 0.0;
};

// Along rows, phases grow with i: theta_{i+1,j} >= theta_{i,j} for every
// 1 <= j <= i <= N-1; the diagonal contributes theta_{i,i} = 0.
std::vector<PairViolation> check_row_monotone(const ReducedState& state,
                                              double slack = 1e-12);

// Down columns, phases shrink with j: theta_{i,j} >= theta_{i,j+1} for every
// 1 <= j < i <= N; the pair ending on the diagonal compares against 0.
std::vector<PairViolation> check_column_monotone(const ReducedState& state,
                                                 double slack = 1e-12);

struct FamilyViolation {
    int N = 0;  // smaller member of the violating pair (N, N+1)
    LatticeIndex index{};
    double value_small = 0.0;  // member N, zero-padded outside its wedge
    double value_large = 0.0;  // member N + 1
};

// Consecutive members embed by zero padding and must grow pointwise:
// theta^(N) <= theta^(N+1) entrywise up to the slack.
std::vector<FamilyViolation> check_N_monotone(const EquilibriumFamily& family,
                                              double slack = 1e-10);

struct Extrapolation {
    LatticeIndex index{};
    double estimate = 0.0;        // value at the largest member
    std::vector<int> sizes;       // N for each increment (value at N+1 minus N)
    std::vector<double> increments;
    double decay_exponent = 0.0;  // fitted ratio of successive increments
};

// Infinite-lattice estimate at one cell: the largest member's value, plus the
// increment table and a least-squares geometric-decay fit as diagnostics.
// Precondition: the index lies in the largest member's wedge. Members too
// small to contain it contribute the padded value 0.
Extrapolation extrapolate(const EquilibriumFamily& family, LatticeIndex idx);

} // namespace rotwave
