#include "rotwave/coupling.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace rotwave {

namespace {

constexpr double kPi = std::numbers::pi;

// Maximum of f over [lo, hi]: dense scan, then golden-section refinement of
// the bracket around the best sample.
double sampled_max(const std::function<double(double)>& f, double lo, double hi,
                   int samples) {
    double best_x = lo, best = f(lo);
    double step = (hi - lo) / (samples - 1);
    for (int k = 1; k < samples; ++k) {
        double x = lo + k * step;
        double v = f(x);
        if (v > best) {
            best = v;
            best_x = x;
        }
    }
    double a = std::max(lo, best_x - step);
    double b = std::min(hi, best_x + step);
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c), fd = f(d);
    for (int it = 0; it < 80 && b - a > 1e-12; ++it) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    return std::max({best, fc, fd});
}

} // namespace

CouplingFunction::CouplingFunction(std::string name,
                                   std::function<double(double)> value,
                                   std::function<double(double)> derivative)
    : name_(std::move(name)), value_(std::move(value)),
      derivative_(std::move(derivative)) {
    if (!value_ || !derivative_)
        throw std::invalid_argument("CouplingFunction: null callable");
    max_derivative_on_core_ = sampled_max(derivative_, -kPi / 2, kPi / 2, 4096);
}

double CouplingFunction::eval(double x) const {
    if (!std::isfinite(x)) throw std::domain_error("coupling eval: non-finite input");
    double v = value_(x);
    if (!std::isfinite(v))
        throw std::domain_error("coupling eval: non-finite value at x=" +
                                std::to_string(x));
    return v;
}

double CouplingFunction::eval_derivative(double x) const {
    if (!std::isfinite(x))
        throw std::domain_error("coupling derivative: non-finite input");
    double v = derivative_(x);
    if (!std::isfinite(v))
        throw std::domain_error("coupling derivative: non-finite value at x=" +
                                std::to_string(x));
    return v;
}

CouplingFunction CouplingFunction::sine() {
    return {"sine", [](double x) { return std::sin(x); },
            [](double x) { return std::cos(x); }};
}

ValidationReport validate_coupling(const CouplingFunction& H, int samples) {
    if (samples < 16)
        throw std::invalid_argument("validate_coupling: samples must be >= 16");

    ValidationReport rep;
    rep.samples = samples;
    rep.derivative_consistent = true;
    rep.periodic = true;
    rep.odd = true;
    rep.increasing_on_core = true;
    rep.positive_on_core = true;

    const double eq_tol = 1e-9;
    const double fd_step = 1e-6;
    double step = 4 * kPi / (samples - 1);
    for (int k = 0; k < samples; ++k) {
        double x = -2 * kPi + k * step;

        if (std::abs(H.eval(x + 2 * kPi) - H.eval(x)) > eq_tol) rep.periodic = false;
        if (std::abs(H.eval(-x) + H.eval(x)) > eq_tol) rep.odd = false;

        double d = H.eval_derivative(x);
        double fd = (H.eval(x + fd_step) - H.eval(x - fd_step)) / (2 * fd_step);
        double mismatch = std::abs(d - fd);
        rep.max_derivative_mismatch = std::max(rep.max_derivative_mismatch, mismatch);
        if (mismatch > 1e-6 * (1.0 + std::abs(d))) rep.derivative_consistent = false;

        if (-kPi / 2 < x && x < kPi / 2 && d <= 0.0) rep.increasing_on_core = false;
        if (0.0 < x && x <= kPi / 2 && H.eval(x) <= 0.0) rep.positive_on_core = false;
    }
    return rep;
}

namespace {

std::map<std::string, CouplingFunction>& registry() {
    static std::map<std::string, CouplingFunction> reg = [] {
        std::map<std::string, CouplingFunction> r;
        r.emplace("sine", CouplingFunction::sine());
        // Two-harmonic coupling with nonvanishing slope at +-pi/2:
        // H'(x) = cos x - 0.4 cos 2x, H'(+-pi/2) = 0.4.
        r.emplace("two_harmonic",
                  CouplingFunction(
                      "two_harmonic",
                      [](double x) { return std::sin(x) - 0.2 * std::sin(2 * x); },
                      [](double x) { return std::cos(x) - 0.4 * std::cos(2 * x); }));
        return r;
    }();
    return reg;
}

std::mutex registry_mutex;

} // namespace

const CouplingFunction& coupling_by_name(const std::string& name) {
    std::lock_guard lock(registry_mutex);
    auto& reg = registry();
    auto it = reg.find(name);
    if (it == reg.end())
        throw std::invalid_argument("unknown coupling: " + name);
    return it->second;
}

void register_coupling(CouplingFunction H) {
    std::lock_guard lock(registry_mutex);
    registry().insert_or_assign(H.name(), std::move(H));
}

std::vector<std::string> registered_couplings() {
    std::lock_guard lock(registry_mutex);
    std::vector<std::string> names;
    for (const auto& [name, fn] : registry()) names.push_back(name);
    return names;
}

} // namespace rotwave
