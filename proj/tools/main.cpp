// Command line front end: one subcommand per operation, flags overriding an
// optional JSON config file, everything forwarded to rotwave::run.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "rotwave/run.hpp"
#include "rotwave/version.hpp"

namespace {

// Applies config-file values to fields the command line left untouched.
void apply_config_file(const std::string& path, CLI::App* sub,
                       rotwave::RunConfig& config) {
    std::ifstream in(path);
    if (!in) throw rotwave::usage_error("cannot open config file: " + path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& err) {
        throw rotwave::usage_error("config file is not valid JSON: " +
                                   std::string(err.what()));
    }
    if (!doc.is_object())
        throw rotwave::usage_error("config file must hold a JSON object");

    auto untouched = [&](const std::string& flag) {
        auto* opt = sub->get_option_no_throw(flag);
        return opt == nullptr || opt->count() == 0;
    };
    try {
        if (doc.contains("coupling") && untouched("--coupling"))
            config.coupling = doc["coupling"].get<std::string>();
        if (doc.contains("out") && untouched("--out"))
            config.output_dir = doc["out"].get<std::string>();
        if (doc.contains("N") && untouched("--N")) config.N = doc["N"].get<int>();
        if (doc.contains("Nmin") && untouched("--Nmin"))
            config.Nmin = doc["Nmin"].get<int>();
        if (doc.contains("Nmax") && untouched("--Nmax"))
            config.Nmax = doc["Nmax"].get<int>();
        if (doc.contains("tol") && untouched("--tol"))
            config.tolerance = doc["tol"].get<double>();
        if (doc.contains("newton_tol") && untouched("--newton-tol"))
            config.newton_tol = doc["newton_tol"].get<double>();
        if (doc.contains("max_steps") && untouched("--max-steps"))
            config.max_steps = doc["max_steps"].get<long>();
        if (doc.contains("dt") && untouched("--dt"))
            config.dt = doc["dt"].get<double>();
        if (doc.contains("idx") && untouched("--idx")) {
            auto idx = doc["idx"].get<std::vector<int>>();
            if (idx.size() != 2)
                throw rotwave::usage_error("config idx must be [i, j]");
            config.extrapolation_index = {idx[0], idx[1]};
        }
        if (doc.contains("pinned") && untouched("--pinned")) {
            auto idx = doc["pinned"].get<std::vector<int>>();
            if (idx.size() != 2)
                throw rotwave::usage_error("config pinned must be [i, j]");
            config.pinned = {idx[0], idx[1]};
        }
        if (doc.contains("R") && untouched("--R"))
            config.truncation_radius = doc["R"].get<int>();
        if (doc.contains("eig_tol") && untouched("--eig-tol"))
            config.eig_tol = doc["eig_tol"].get<double>();
        if (doc.contains("nmax") && untouched("--nmax"))
            config.n_max = doc["nmax"].get<int>();
        if (doc.contains("alphas") && untouched("--alphas"))
            config.alphas = doc["alphas"].get<std::vector<double>>();
        if (doc.contains("omega") && untouched("--omega"))
            config.omega = doc["omega"].get<double>();
        if (doc.contains("T") && untouched("--T")) config.T = doc["T"].get<double>();
        if (doc.contains("dt_sample") && untouched("--dt-sample"))
            config.dt_sample = doc["dt_sample"].get<double>();
        if (doc.contains("samples") && untouched("--samples"))
            config.samples = doc["samples"].get<int>();
        if (doc.contains("seed") && untouched("--seed"))
            config.seed = doc["seed"].get<std::uint64_t>();
    } catch (const nlohmann::json::exception& err) {
        throw rotwave::usage_error("config file field has the wrong type: " +
                                   std::string(err.what()));
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Rotating waves on phase oscillator lattices"};
    app.set_version_flag("--version", rotwave::kVersion);
    app.require_subcommand(1);

    rotwave::RunConfig config;
    std::string config_file;
    std::vector<int> idx_flag, pinned_flag;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--coupling", config.coupling, "Coupling function name");
        sub->add_option("--out", config.output_dir,
                        "Output directory (default $ROTWAVE_OUTDIR or ./rotwave_out)");
        sub->add_option("--config", config_file,
                        "JSON config file; explicit flags take precedence");
        sub->add_option("--seed", config.seed, "Seed for seeded start vectors");
        sub->add_option("--tol", config.tolerance, "Relaxation residual tolerance");
        sub->add_option("--newton-tol", config.newton_tol,
                        "Newton polish residual tolerance");
        sub->add_option("--max-steps", config.max_steps, "Relaxation step cap");
        sub->add_option("--dt", config.dt, "Relaxation time step");
    };

    auto* solve = app.add_subcommand("solve", "Reduced equilibrium for one N");
    solve->add_option("--N", config.N, "Lattice parameter");
    add_common(solve);

    auto* extend =
        app.add_subcommand("extend", "Equilibrium unfolded to the full window");
    extend->add_option("--N", config.N, "Lattice parameter");
    add_common(extend);

    auto* family = app.add_subcommand("family", "Equilibria across a range of N");
    family->add_option("--Nmin", config.Nmin, "Smallest N");
    family->add_option("--Nmax", config.Nmax, "Largest N");
    family->add_option("--idx", idx_flag, "Extrapolation cell, as i j")
        ->expected(2);
    add_common(family);

    auto* spectrum =
        app.add_subcommand("spectrum", "Pinned linearization and its spectral edge");
    spectrum->add_option("--N", config.N, "Lattice parameter for the field");
    spectrum->add_option("--R", config.truncation_radius, "Truncation radius");
    spectrum->add_option("--pinned", pinned_flag, "Pinned cell, as i j")->expected(2);
    spectrum->add_option("--eig-tol", config.eig_tol, "Eigenpair residual tolerance");
    add_common(spectrum);

    auto* linf = app.add_subcommand("linf", "Ramp vectors against the 4max H'/n bound");
    linf->add_option("--nmax", config.n_max, "Largest ramp width");
    linf->add_option("--N", config.N, "Lattice parameter (raised if too small)");
    linf->add_option("--pinned", pinned_flag, "Pinned cell, as i j")->expected(2);
    add_common(linf);

    auto* lo = app.add_subcommand("lambda-omega",
                                  "Amplitude dynamics against the phase reduction");
    lo->add_option("--N", config.N, "Window half-width and phase field size");
    lo->add_option("--alphas", config.alphas, "Coupling strengths to sweep");
    lo->add_option("--omega", config.omega, "Rotation frequency");
    lo->add_option("--T", config.T, "Final time");
    lo->add_option("--dt-sample", config.dt_sample, "Sampling interval");
    add_common(lo);

    auto* validate =
        app.add_subcommand("validate-coupling", "Admissibility checks for a coupling");
    validate->add_option("--samples", config.samples, "Grid size over [-2pi, 2pi]");
    add_common(validate);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        // --help and --version land here with Success.
        if (err.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success))
            return app.exit(err);
        app.exit(err);
        return rotwave::kExitUsage;
    }

    CLI::App* sub = app.get_subcommands().front();
    config.command = sub->get_name();

    try {
        if (!config_file.empty()) apply_config_file(config_file, sub, config);
        if (idx_flag.size() == 2) config.extrapolation_index = {idx_flag[0], idx_flag[1]};
        if (pinned_flag.size() == 2) config.pinned = {pinned_flag[0], pinned_flag[1]};
        return rotwave::run(config);
    } catch (const rotwave::usage_error& err) {
        std::cerr << "usage error: " << err.what() << "\n";
        return rotwave::kExitUsage;
    } catch (const std::invalid_argument& err) {
        std::cerr << "usage error: " << err.what() << "\n";
        return rotwave::kExitUsage;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return rotwave::kExitNumericalFailure;
    }
}
