#include "rotwave/lambda_omega.hpp"

#include <cmath>
#include <numbers>

#include <boost/numeric/odeint.hpp>

namespace rotwave {

namespace {

using complex_state = std::vector<std::complex<double>>;

struct LatticeRhs {
    int Nw;
    double alpha;
    std::complex<double> linear;  // 1 + i*omega

    void operator()(const complex_state& z, complex_state& dzdt,
                    double /*t*/) const {
        int side = 2 * Nw;
        dzdt.resize(z.size());
        for (int a = 0; a < side; ++a) {
            for (int b = 0; b < side; ++b) {
                auto k = static_cast<std::size_t>(a) * side + b;
                std::complex<double> self = z[k];
                std::complex<double> coupling = 0.0;
                if (a > 0) coupling += z[k - static_cast<std::size_t>(side)] - self;
                if (a < side - 1)
                    coupling += z[k + static_cast<std::size_t>(side)] - self;
                if (b > 0) coupling += z[k - 1] - self;
                if (b < side - 1) coupling += z[k + 1] - self;
                dzdt[k] = alpha * coupling + linear * self -
                          self * std::norm(self);
            }
        }
    }
};

} // namespace

ComplexLatticeState Trajectory::state(std::size_t k) const {
    ComplexLatticeState s(N_window_, alpha_, omega_);
    s.z = states_.at(k);
    return s;
}

void Trajectory::push(double t, std::vector<std::complex<double>> z) {
    times_.push_back(t);
    states_.push_back(std::move(z));
}

Trajectory simulate(const ComplexLatticeState& init, double T, double dt_sample) {
    if (T < 0) throw std::invalid_argument("simulate: T must be >= 0");
    if (dt_sample <= 0) throw std::invalid_argument("simulate: dt_sample must be > 0");

    namespace ode = boost::numeric::odeint;
    LatticeRhs rhs{init.N_window, init.alpha, {1.0, init.omega}};
    Trajectory traj(init.N_window, init.alpha, init.omega);

    auto observer = [&](const complex_state& z, double t) {
        for (const auto& v : z) {
            if (std::abs(v) > 10.0)
                throw instability_error("simulate: amplitude blew past 10", t);
        }
        traj.push(t, z);
    };

    complex_state z = init.z;
    auto stepper = ode::make_controlled(
        1e-8, 1e-8, ode::runge_kutta_cash_karp54<complex_state>());
    ode::integrate_const(stepper, rhs, z, 0.0, T + dt_sample / 2, dt_sample,
                         observer);
    return traj;
}

PolarField polar_decompose(const ComplexLatticeState& state, double t,
                           std::optional<double> Omega) {
    double om = Omega.value_or(state.omega);
    PolarField out;
    out.N_window = state.N_window;
    out.r.reserve(state.z.size());
    out.theta.reserve(state.z.size());
    for (const auto& v : state.z) {
        double r = std::abs(v);
        if (r < 1e-12)
            throw decomposition_error("polar_decompose: vanishing modulus");
        out.r.push_back(r);
        out.theta.push_back(wrap_to_pi(std::arg(v) - om * t));
    }
    return out;
}

ReductionReport reduction_error(double alpha, double omega,
                                const FullState& phase_eq, double T,
                                double dt_sample) {
    int N = phase_eq.N;
    ComplexLatticeState init(N, alpha, omega);
    for (std::size_t k = 0; k < phase_eq.values.size(); ++k)
        init.z[k] = std::polar(1.0, phase_eq.values[k]);

    Trajectory traj = simulate(init, T, dt_sample);

    ReductionReport rep;
    rep.alpha = alpha;
    rep.omega = omega;
    rep.T = T;

    int side = 2 * N;
    for (std::size_t s = 0; s < traj.size(); ++s) {
        ComplexLatticeState st = traj.state(s);
        PolarField polar = polar_decompose(st, traj.time(s));
        for (std::size_t k = 0; k < polar.r.size(); ++k) {
            rep.max_amplitude_deviation =
                std::max(rep.max_amplitude_deviation, std::abs(polar.r[k] - 1.0));
        }
        // Phase differences across edges are frame independent; compare each
        // against the equilibrium difference.
        auto drift_at = [&](std::size_t ka, std::size_t kb) {
            double sim = wrap_to_pi(polar.theta[kb] - polar.theta[ka]);
            double eq = wrap_to_pi(phase_eq.values[kb] - phase_eq.values[ka]);
            return std::abs(wrap_to_pi(sim - eq));
        };
        for (int a = 0; a < side; ++a) {
            for (int b = 0; b < side; ++b) {
                auto k = static_cast<std::size_t>(a) * side + b;
                if (a < side - 1)
                    rep.max_phase_drift = std::max(
                        rep.max_phase_drift,
                        drift_at(k, k + static_cast<std::size_t>(side)));
                if (b < side - 1)
                    rep.max_phase_drift =
                        std::max(rep.max_phase_drift, drift_at(k, k + 1));
            }
        }
    }
    return rep;
}

} // namespace rotwave
