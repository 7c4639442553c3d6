#include "rotwave/extension.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rotwave {

namespace {

constexpr double kPi = std::numbers::pi;

// Quarter turn about the window centre (the point between the four centre
// cells): cell (i, j) goes to (j, 1-i).
std::pair<int, int> quarter_turn(int i, int j) { return {j, 1 - i}; }

} // namespace

double wrap_to_pi(double x) {
    double y = std::remainder(x, 2 * kPi);
    if (y <= -kPi) y += 2 * kPi;
    return y;
}

double wrap_to_2pi(double x) {
    double y = std::fmod(x, 2 * kPi);
    if (y < 0) y += 2 * kPi;
    return y;
}

FullState extend_full(const ReducedState& reduced) {
    int N = reduced.N;
    if (N < 2) throw std::invalid_argument("extend_full: N must be >= 2");
    FullState full(N);

    // First quadrant: wedge, diagonal ray at 0, mirrored wedge with -theta.
    for (int k = 1; k <= N; ++k) full.at(k, k) = 0.0;
    for (const auto& idx : reduced_indices(N)) {
        double v = reduced.at(idx);
        full.at(idx.i, idx.j) = wrap_to_2pi(v);
        full.at(idx.j, idx.i) = wrap_to_2pi(-v);
    }

    // Remaining quadrants: quarter turns with a pi/2 shift per turn.
    for (int i = 1; i <= N; ++i) {
        for (int j = 1; j <= N; ++j) {
            double v = full.at(i, j);
            int ci = i, cj = j;
            for (int turn = 1; turn <= 3; ++turn) {
                auto [ti, tj] = quarter_turn(ci, cj);
                ci = ti;
                cj = tj;
                full.at(ci, cj) = wrap_to_2pi(v + turn * kPi / 2);
            }
        }
    }
    return full;
}

std::vector<double> full_residual(const FullState& full, const CouplingFunction& H) {
    int N = full.N;
    std::vector<double> out(full.values.size(), 0.0);
    constexpr int di[4] = {-1, 1, 0, 0};
    constexpr int dj[4] = {0, 0, -1, 1};
    for (int i = 1 - N; i <= N; ++i) {
        for (int j = 1 - N; j <= N; ++j) {
            double self = full.at(i, j);
            double sum = 0.0;
            for (int d = 0; d < 4; ++d) {
                int ni = i + di[d], nj = j + dj[d];
                if (!full.in_window(ni, nj)) continue;
                sum += H.eval(wrap_to_pi(full.at(ni, nj) - self));
            }
            out[full.offset(i, j)] = sum;
        }
    }
    return out;
}

double full_residual_inf_norm(const FullState& full, const CouplingFunction& H) {
    double norm = 0.0;
    for (double r : full_residual(full, H)) norm = std::max(norm, std::abs(r));
    return norm;
}

RingProfile ring_profile(const FullState& full, int k) {
    int N = full.N;
    if (k < 1 || k > N - 1)
        throw std::invalid_argument("ring_profile: need 1 <= k <= N - 1");

    RingProfile prof;
    prof.k = k;
    prof.phases.reserve(8 * k + 4);
    // Perimeter of the square [-k, 1+k]^2, starting on the diagonal ray cell
    // (1+k, 1+k) and visiting the rays in the order 0, pi/2, pi, 3*pi/2.
    for (int j = 1 + k; j >= -k; --j) prof.phases.push_back(full.at(1 + k, j));
    for (int i = k; i >= -k; --i) prof.phases.push_back(full.at(i, -k));
    for (int j = 1 - k; j <= 1 + k; ++j) prof.phases.push_back(full.at(-k, j));
    for (int i = 1 - k; i <= k; ++i) prof.phases.push_back(full.at(i, 1 + k));

    double winding = 0.0;
    auto n = prof.phases.size();
    for (std::size_t m = 0; m < n; ++m)
        winding += wrap_to_pi(prof.phases[(m + 1) % n] - prof.phases[m]);
    prof.winding = winding;
    return prof;
}

} // namespace rotwave
