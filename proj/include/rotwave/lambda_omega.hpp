#pragma once

#include <complex>
#include <optional>
#include <stdexcept>
#include <vector>

#include "rotwave/extension.hpp"

namespace rotwave {

// Complex amplitudes on the window 1-N_window <= i, j <= N_window, same
// layout as FullState. Dynamics: dz/dt = alpha * sum(z_nb - z) + (1 + i*omega)
// * z - z|z|^2, free boundary.
struct ComplexLatticeState {
    int N_window = 0;
    double alpha = 0.0;
    double omega = 0.0;
    std::vector<std::complex<double>> z;

    ComplexLatticeState(int N_window_, double alpha_, double omega_)
        : N_window(N_window_), alpha(alpha_), omega(omega_),
          z(static_cast<std::size_t>(2 * N_window_) * (2 * N_window_)) {}
    ComplexLatticeState() = default;

    std::size_t offset(int i, int j) const {
        return static_cast<std::size_t>(i - (1 - N_window)) * (2 * N_window) +
               static_cast<std::size_t>(j - (1 - N_window));
    }
    std::complex<double>& at(int i, int j) { return z[offset(i, j)]; }
    const std::complex<double>& at(int i, int j) const { return z[offset(i, j)]; }
};

struct instability_error : std::runtime_error {
    instability_error(const std::string& what, double t_)
        : std::runtime_error(what), t(t_) {}
    double t = 0.0;  // first sample time with |z| > 10
};

struct decomposition_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// States sampled at fixed intervals along one simulation.
class Trajectory {
  public:
    Trajectory(int N_window, double alpha, double omega)
        : N_window_(N_window), alpha_(alpha), omega_(omega) {}

    std::size_t size() const { return times_.size(); }
    double time(std::size_t k) const { return times_.at(k); }
    ComplexLatticeState state(std::size_t k) const;
    int N_window() const { return N_window_; }
    double alpha() const { return alpha_; }
    double omega() const { return omega_; }

    void push(double t, std::vector<std::complex<double>> z);

  private:
    int N_window_ = 0;
    double alpha_ = 0.0;
    double omega_ = 0.0;
    std::vector<double> times_;
    std::vector<std::vector<std::complex<double>>> states_;
};

// Integrates the lattice with an adaptive explicit embedded Runge-Kutta pair
// at absolute and relative error control 1e-8, sampling every dt_sample from
// 0 to T inclusive. Throws instability_error as soon as a sampled state has
// |z| > 10 anywhere.
Trajectory simulate(const ComplexLatticeState& init, double T, double dt_sample);

// Moduli and co-rotating phases: r = |z|, theta = arg(z) - Omega*t wrapped to
// (-pi, pi]. Omega defaults to the state's omega (the rotation frequency of
// the wave). Throws decomposition_error if any modulus is below 1e-12.
struct PolarField {
    int N_window = 0;
    std::vector<double> r;
    std::vector<double> theta;
};
PolarField polar_decompose(const ComplexLatticeState& state, double t,
                           std::optional<double> Omega = std::nullopt);

struct ReductionReport {
    double alpha = 0.0;
    double omega = 0.0;
    double T = 0.0;
    // max over samples and cells of ||z| - 1|
    double max_amplitude_deviation = 0.0;
    // max over samples and lattice edges of |wrapped phase difference minus
    // the phase-model equilibrium difference|
    double max_phase_drift = 0.0;
};

// Starts from z = exp(i * theta_eq) on the phase equilibrium field and
// measures how far the coupled amplitude dynamics strays from the phase
// reduction over [0, T].
ReductionReport reduction_error(double alpha, double omega,
                                const FullState& phase_eq, double T,
                                double dt_sample = 1.0);

} // namespace rotwave
