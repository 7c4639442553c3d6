#pragma once

#include <vector>

#include "rotwave/coupling.hpp"
#include "rotwave/solver.hpp"

namespace rotwave {

// Phase field on the full 2N x 2N window, indices 1-N <= i, j <= N, row-major
// with i outermost. Values live in [0, 2*pi).
struct FullState {
    int N = 0;
    std::vector<double> values;

    explicit FullState(int N_)
        : N(N_), values(static_cast<std::size_t>(2 * N_) * (2 * N_), 0.0) {}
    FullState() = default;

    bool in_window(int i, int j) const {
        return 1 - N <= i && i <= N && 1 - N <= j && j <= N;
    }
    std::size_t offset(int i, int j) const {
        return static_cast<std::size_t>(i - (1 - N)) * (2 * N) +
               static_cast<std::size_t>(j - (1 - N));
    }
    double at(int i, int j) const { return values[offset(i, j)]; }
    double& at(int i, int j) { return values[offset(i, j)]; }
};

// Wraps to (-pi, pi].
double wrap_to_pi(double x);
// Wraps to [0, 2*pi).
double wrap_to_2pi(double x);

// Unfolds a reduced state over the whole window by the eight-fold symmetry:
// the reduced wedge is copied as-is, reflected across the diagonal with
// negated phase, and the resulting quadrant is rotated a quarter turn about
// the window centre three times, adding pi/2 per turn. The four diagonal rays
// carry the fixed phases 0, pi/2, pi, 3*pi/2. Works for any reduced state;
// only equilibria extend to full-window equilibria.
FullState extend_full(const ReducedState& reduced);

// Phase-model right-hand side on the full window with free boundary: for each
// cell the sum of H(wrapped phase difference) over its 2 to 4 neighbours.
// Same layout as FullState::values.
std::vector<double> full_residual(const FullState& full, const CouplingFunction& H);

double full_residual_inf_norm(const FullState& full, const CouplingFunction& H);

struct RingProfile {
    int k = 0;
    std::vector<double> phases;  // 8k + 4 values, in traversal order
    double winding = 0.0;        // cyclic sum of wrapped successive differences
};

// The k-th concentric square ring around the centre four cells, traversed from
// the boundary ray of the reduced wedge in the direction of increasing phase.
// Precondition: 1 <= k <= N - 1.
RingProfile ring_profile(const FullState& full, int k);

} // namespace rotwave
