#pragma once

#include <functional>
#include <string>
#include <vector>

namespace rotwave {

// A lattice coupling: odd, 2*pi-periodic, smooth, strictly increasing on
// (-pi/2, pi/2). Holds the value and its derivative as callables plus the
// derivative maximum over the closed core interval [-pi/2, pi/2], computed
// once at construction by dense sampling with local refinement.
class CouplingFunction {
  public:
    CouplingFunction(std::string name,
                     std::function<double(double)> value,
                     std::function<double(double)> derivative);

    // Throw std::domain_error on non-finite input or a non-finite result
    // from the wrapped callable.
    double eval(double x) const;
    double eval_derivative(double x) const;

    double max_derivative_on_core() const { return max_derivative_on_core_; }
    const std::string& name() const { return name_; }

    static CouplingFunction sine();

  private:
    std::string name_;
    std::function<double(double)> value_;
    std::function<double(double)> derivative_;
    double max_derivative_on_core_;
};

// One flag per admissibility condition, each checked on a uniform grid of
// `samples` points over [-2*pi, 2*pi]. Smoothness is not certifiable from
// samples; derivative_consistent stands in for it (central finite differences
// against eval_derivative at step 1e-6).
struct ValidationReport {
    int samples = 0;
    bool derivative_consistent = false;
    bool periodic = false;
    bool odd = false;
    bool increasing_on_core = false;  // H' > 0 strictly inside (-pi/2, pi/2)
    bool positive_on_core = false;    // consequence: H > 0 on (0, pi/2]
    double max_derivative_mismatch = 0.0;

    // The four admissibility conditions; positivity is derived, not counted.
    bool passes_core_conditions() const {
        return derivative_consistent && periodic && odd && increasing_on_core;
    }
};

// Precondition: samples >= 16.
ValidationReport validate_coupling(const CouplingFunction& H, int samples);

// Name registry. "sine" and "two_harmonic" are built in; register_coupling
// makes further couplings reachable from the CLI and config files.
const CouplingFunction& coupling_by_name(const std::string& name);
void register_coupling(CouplingFunction H);
std::vector<std::string> registered_couplings();

} // namespace rotwave
