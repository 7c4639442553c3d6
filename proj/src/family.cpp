#include "rotwave/family.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace rotwave {

EquilibriumFamily solve_family(int Nmin, int Nmax, const CouplingFunction& H,
                               const SolverOptions& opts, double newton_tol) {
    if (Nmin < 2 || Nmax < Nmin)
        throw std::invalid_argument("solve_family: need 2 <= Nmin <= Nmax");

    EquilibriumFamily family;
    family.Nmin = Nmin;
    family.Nmax = Nmax;
    family.tolerance = newton_tol;
    family.members.reserve(static_cast<std::size_t>(Nmax - Nmin + 1));
    for (int N = Nmin; N <= Nmax; ++N) {
        try {
            family.members.push_back(solve_equilibrium(N, H, opts, newton_tol));
        } catch (const convergence_error& err) {
            throw convergence_error(
                "family member N=" + std::to_string(N) + ": " + err.what(),
                err.partial);
        } catch (const refinement_error& err) {
            throw refinement_error("family member N=" + std::to_string(N) + ": " +
                                   err.what());
        }
    }
    return family;
}

std::vector<PairViolation> check_row_monotone(const ReducedState& state,
                                              double slack) {
    std::vector<PairViolation> violations;
    for (int i = 1; i <= state.N - 1; ++i) {
        for (int j = 1; j <= i; ++j) {
            double low = (j == i) ? 0.0 : state.at({i, j});
            double high = state.at({i + 1, j});
            if (high < low - slack)
                violations.push_back({{i, j}, {i + 1, j}, low, high});
        }
    }
    return violations;
}

std::vector<PairViolation> check_column_monotone(const ReducedState& state,
                                                 double slack) {
    std::vector<PairViolation> violations;
    for (int i = 2; i <= state.N; ++i) {
        for (int j = 1; j < i; ++j) {
            double high = state.at({i, j});
            double low = (j + 1 == i) ? 0.0 : state.at({i, j + 1});
            if (high < low - slack)
                violations.push_back({{i, j + 1}, {i, j}, low, high});
        }
    }
    return violations;
}

std::vector<FamilyViolation> check_N_monotone(const EquilibriumFamily& family,
                                              double slack) {
    std::vector<FamilyViolation> violations;
    for (int N = family.Nmin; N < family.Nmax; ++N) {
        const ReducedState& small = family.at(N).state;
        const ReducedState& large = family.at(N + 1).state;
        for (const auto& idx : reduced_indices(N + 1)) {
            double vs = in_reduced(idx, N) ? small.at(idx) : 0.0;
            double vl = large.at(idx);
            if (vl < vs - slack) violations.push_back({N, idx, vs, vl});
        }
    }
    return violations;
}

Extrapolation extrapolate(const EquilibriumFamily& family, LatticeIndex idx) {
    if (!in_reduced(idx, family.Nmax))
        throw std::invalid_argument("extrapolate: index outside largest wedge");

    Extrapolation ex;
    ex.index = idx;
    ex.estimate = family.at(family.Nmax).state.at(idx);
    for (int N = family.Nmin; N < family.Nmax; ++N) {
        double vs = in_reduced(idx, N) ? family.at(N).state.at(idx) : 0.0;
        double vl = in_reduced(idx, N + 1) ? family.at(N + 1).state.at(idx) : 0.0;
        ex.sizes.push_back(N);
        ex.increments.push_back(vl - vs);
    }

    // Least-squares line through (N, log increment) over positive increments;
    // the fitted ratio exp(slope) is diagnostic only.
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (std::size_t k = 0; k < ex.increments.size(); ++k) {
        if (ex.increments[k] <= 0) continue;
        double x = ex.sizes[k];
        double y = std::log(ex.increments[k]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    if (n >= 2 && n * sxx - sx * sx > 0)
        ex.decay_exponent = std::exp((n * sxy - sx * sy) / (n * sxx - sx * sx));
    else
        ex.decay_exponent = std::numeric_limits<double>::quiet_NaN();
    return ex;
}

} // namespace rotwave
