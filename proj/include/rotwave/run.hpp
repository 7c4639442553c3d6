#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "rotwave/lattice.hpp"

namespace rotwave {

// Exit codes of the command layer.
inline constexpr int kExitSuccess = 0;
inline constexpr int kExitNumericalFailure = 1;
inline constexpr int kExitUsage = 2;

struct RunConfig {
    std::string command;  // solve, extend, family, spectrum, linf,
                          // lambda-omega, validate-coupling
    std::string coupling = "sine";
    std::string output_dir;  // empty: $ROTWAVE_OUTDIR, else ./rotwave_out

    int N = 2;
    int Nmin = 2;
    int Nmax = 2;
    double tolerance = 1e-10;
    double newton_tol = 1e-13;
    long max_steps = 10'000'000;
    double dt = 0.1;

    LatticeIndex extrapolation_index{2, 1};

    LatticeIndex pinned{1, 1};
    int truncation_radius = 4;
    double eig_tol = 1e-8;

    int n_max = 16;

    std::vector<double> alphas = {0.2, 0.1, 0.05};
    double omega = 1.0;
    double T = 200.0;
    double dt_sample = 1.0;

    int samples = 1024;

    std::uint64_t seed = 2026;
};

// Executes one command: computes, writes the per-command result files plus
// manifest.json into the output directory, and returns the exit code. A
// numerical failure still writes the manifest (status and error recorded).
// Configuration problems throw usage_error before anything runs.
struct usage_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

int run(const RunConfig& config);

} // namespace rotwave
