#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>

namespace testsupport {

// Plain bisection, used as an independent oracle for scalar roots.
// Requires a sign change on [lo, hi].
inline double bisect(const std::function<double(double)>& f, double lo,
                     double hi, double tol = 1e-14) {
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0)) {
        throw std::invalid_argument("bisect: no sign change on interval");
    }
    for (int it = 0; it < 200 && (hi - lo) > tol; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// Root of -2 sin(t) + cos(2t) on (0, pi/4): the single-cell equilibrium
// phase of the smallest wedge. Closed form: asin((sqrt(3) - 1) / 2).
inline double smallest_wedge_root() {
    return bisect([](double t) { return -2.0 * std::sin(t) + std::cos(2.0 * t); },
                  0.0, 0.785398163397448279, 1e-15);
}

// Closed-form value for cross-checking the bisection itself.
inline constexpr double kSmallestWedgeClosedForm = 0.37473443270874007;

} // namespace testsupport
