#include "rotwave/run.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>

#include <json.hpp>

#include "rotwave/io.hpp"
#include "rotwave/version.hpp"

namespace rotwave {

namespace fs = std::filesystem;

namespace {

nlohmann::json config_json(const RunConfig& c) {
    return {{"command", c.command},
            {"coupling", c.coupling},
            {"N", c.N},
            {"Nmin", c.Nmin},
            {"Nmax", c.Nmax},
            {"tolerance", c.tolerance},
            {"newton_tol", c.newton_tol},
            {"max_steps", c.max_steps},
            {"dt", c.dt},
            {"extrapolation_index",
             nlohmann::json::array({c.extrapolation_index.i, c.extrapolation_index.j})},
            {"pinned", nlohmann::json::array({c.pinned.i, c.pinned.j})},
            {"truncation_radius", c.truncation_radius},
            {"eig_tol", c.eig_tol},
            {"n_max", c.n_max},
            {"alphas", c.alphas},
            {"omega", c.omega},
            {"T", c.T},
            {"dt_sample", c.dt_sample},
            {"samples", c.samples},
            {"seed", c.seed}};
}

fs::path resolve_output_dir(const RunConfig& c) {
    if (!c.output_dir.empty()) return c.output_dir;
    if (const char* env = std::getenv("ROTWAVE_OUTDIR"); env && *env) return env;
    return "rotwave_out";
}

SolverOptions solver_options(const RunConfig& c) {
    SolverOptions opts;
    opts.tolerance = c.tolerance;
    opts.max_steps = c.max_steps;
    opts.dt = c.dt;
    return opts;
}

void write_json(const fs::path& path, const nlohmann::json& doc) {
    write_text_file(path, doc.dump(2) + "\n");
}

void validate(const RunConfig& c) {
    static const std::vector<std::string> commands = {
        "solve",    "extend", "family",       "spectrum",
        "linf",     "lambda-omega", "validate-coupling"};
    if (std::find(commands.begin(), commands.end(), c.command) == commands.end())
        throw usage_error("unknown command: " + c.command);
    if (c.tolerance <= 0 || c.newton_tol <= 0 || c.eig_tol <= 0)
        throw usage_error("tolerances must be > 0");
    if (c.command == "solve" || c.command == "extend") {
        if (c.N < 2) throw usage_error("N must be >= 2");
    }
    if (c.command == "family") {
        if (c.Nmin < 2 || c.Nmax < c.Nmin)
            throw usage_error("need 2 <= Nmin <= Nmax");
        if (!in_reduced(c.extrapolation_index, c.Nmax))
            throw usage_error("extrapolation index outside the largest wedge");
    }
    if (c.command == "spectrum") {
        if (c.truncation_radius < 2) throw usage_error("R must be >= 2");
        if (c.N < 2) throw usage_error("N must be >= 2");
    }
    if (c.command == "linf" && c.n_max < 1) throw usage_error("nmax must be >= 1");
    if (c.command == "lambda-omega") {
        if (c.N < 2) throw usage_error("N must be >= 2");
        if (c.alphas.empty()) throw usage_error("alpha list must not be empty");
        if (c.T < 0) throw usage_error("T must be >= 0");
        if (c.dt_sample <= 0) throw usage_error("sample interval must be > 0");
        if (c.omega == 0) throw usage_error("omega must be nonzero");
    }
    if (c.command == "validate-coupling" && c.samples < 16)
        throw usage_error("samples must be >= 16");
    try {
        coupling_by_name(c.coupling);
    } catch (const std::invalid_argument& err) {
        throw usage_error(err.what());
    }
}

void run_solve(const RunConfig& c, const fs::path& out) {
    const auto& H = coupling_by_name(c.coupling);
    SolveReport rep = solve_equilibrium(c.N, H, solver_options(c), c.newton_tol);
    write_text_file(out / "equilibrium.csv", reduced_csv(rep.state));
    nlohmann::json eq = reduced_json(rep.state);
    eq["coupling"] = c.coupling;
    eq["residual_inf_norm"] = rep.residual_inf_norm;
    write_json(out / "equilibrium.json", eq);
    write_json(out / "solve_report.json", solve_report_json(rep));
}

void run_extend(const RunConfig& c, const fs::path& out) {
    const auto& H = coupling_by_name(c.coupling);
    SolveReport rep = solve_equilibrium(c.N, H, solver_options(c), c.newton_tol);
    FullState full = extend_full(rep.state);
    write_text_file(out / "full_field.csv", full_csv(full));
    nlohmann::json field = full_json(full);
    field["coupling"] = c.coupling;
    field["full_residual_inf_norm"] = full_residual_inf_norm(full, H);
    write_json(out / "full_field.json", field);
    nlohmann::json rings = nlohmann::json::array();
    for (int k = 1; k <= c.N - 1; ++k) rings.push_back(ring_json(ring_profile(full, k)));
    write_json(out / "rings.json", rings);
}

void run_family(const RunConfig& c, const fs::path& out) {
    const auto& H = coupling_by_name(c.coupling);
    EquilibriumFamily family =
        solve_family(c.Nmin, c.Nmax, H, solver_options(c), c.newton_tol);
    write_json(out / "family.json", family_json(family));

    nlohmann::json violations;
    nlohmann::json row = nlohmann::json::array();
    nlohmann::json column = nlohmann::json::array();
    for (const auto& rep : family.members) {
        for (auto& entry : pair_violations_json(check_row_monotone(rep.state))) {
            entry["N"] = rep.state.N;
            row.push_back(entry);
        }
        for (auto& entry : pair_violations_json(check_column_monotone(rep.state))) {
            entry["N"] = rep.state.N;
            column.push_back(entry);
        }
    }
    violations["row"] = row;
    violations["column"] = column;
    violations["N_monotone"] = family_violations_json(check_N_monotone(family));
    write_json(out / "violations.json", violations);

    Extrapolation ex = extrapolate(family, c.extrapolation_index);
    write_json(out / "extrapolation.json", extrapolation_json(ex));
    write_text_file(out / "increments.csv", increments_csv(ex));
}

void run_spectrum(const RunConfig& c, const fs::path& out) {
    const auto& H = coupling_by_name(c.coupling);
    if (c.truncation_radius > c.N - 1)
        throw usage_error("spectrum needs R <= N - 1 so the field covers the window");
    SolveReport rep = solve_equilibrium(c.N, H, solver_options(c), c.newton_tol);
    FullState full = extend_full(rep.state);
    LinearizationOperator op =
        build_linearization(full, H, c.pinned, c.truncation_radius);
    write_json(out / "operator.json", operator_header_json(op));
    write_text_file(out / "operator.txt", operator_triplets(op));
    SpectralReport sp = smallest_eigen_of_negL(op, c.eig_tol, c.seed);
    write_json(out / "spectral_report.json",
               spectral_report_json(sp, op.dimension()));
}

void run_linf(const RunConfig& c, const fs::path& out) {
    const auto& H = coupling_by_name(c.coupling);
    int R = c.n_max + 2;
    int N = std::max(c.N, R + 1);
    SolveReport rep = solve_equilibrium(N, H, solver_options(c), c.newton_tol);
    FullState full = extend_full(rep.state);
    auto rows = linf_decay_check(full, H, c.pinned, c.n_max);
    write_text_file(out / "linf_table.csv", linf_csv(rows));
    write_json(out / "linf.json",
               {{"coupling", c.coupling},
                {"max_derivative_on_core", H.max_derivative_on_core()},
                {"n_max", c.n_max},
                {"rows", linf_json(rows)}});
}

void run_lambda_omega(const RunConfig& c, const fs::path& out) {
    const auto& H = coupling_by_name(c.coupling);
    SolveReport rep = solve_equilibrium(c.N, H, solver_options(c), c.newton_tol);
    FullState full = extend_full(rep.state);
    nlohmann::json sweep = nlohmann::json::array();
    for (double alpha : c.alphas) {
        ReductionReport red = reduction_error(alpha, c.omega, full, c.T, c.dt_sample);
        sweep.push_back(reduction_report_json(red));

        ComplexLatticeState init(c.N, alpha, c.omega);
        for (std::size_t k = 0; k < full.values.size(); ++k)
            init.z[k] = std::polar(1.0, full.values[k]);
        Trajectory traj = simulate(init, c.T, c.dt_sample);
        write_text_file(out / ("trajectory_alpha_" + format_double(alpha) + ".csv"),
                        trajectory_csv(traj));
    }
    write_json(out / "reduction_sweep.json", sweep);
}

void run_validate_coupling(const RunConfig& c, const fs::path& out) {
    const auto& H = coupling_by_name(c.coupling);
    ValidationReport rep = validate_coupling(H, c.samples);
    write_json(out / "validation.json", validation_json(rep, c.coupling));
}

} // namespace

int run(const RunConfig& config) {
    validate(config);
    fs::path out = resolve_output_dir(config);
    fs::create_directories(out);

    auto started = std::chrono::steady_clock::now();
    nlohmann::json manifest = {{"command", config.command},
                               {"config", config_json(config)},
                               {"coupling", config.coupling},
                               {"seed", config.seed},
                               {"version", kVersion}};

    int exit_code = kExitSuccess;
    std::string status = "success";
    std::string error;
    try {
        if (config.command == "solve") run_solve(config, out);
        else if (config.command == "extend") run_extend(config, out);
        else if (config.command == "family") run_family(config, out);
        else if (config.command == "spectrum") run_spectrum(config, out);
        else if (config.command == "linf") run_linf(config, out);
        else if (config.command == "lambda-omega") run_lambda_omega(config, out);
        else run_validate_coupling(config, out);
    } catch (const usage_error&) {
        throw;
    } catch (const convergence_error& err) {
        status = "numerical_failure";
        error = err.what();
        exit_code = kExitNumericalFailure;
    } catch (const refinement_error& err) {
        status = "numerical_failure";
        error = err.what();
        exit_code = kExitNumericalFailure;
    } catch (const spectral_error& err) {
        status = "numerical_failure";
        error = err.what();
        exit_code = kExitNumericalFailure;
    } catch (const instability_error& err) {
        status = "numerical_failure";
        error = err.what();
        exit_code = kExitNumericalFailure;
    } catch (const decomposition_error& err) {
        status = "numerical_failure";
        error = err.what();
        exit_code = kExitNumericalFailure;
    } catch (const std::domain_error& err) {
        status = "numerical_failure";
        error = err.what();
        exit_code = kExitNumericalFailure;
    }

    auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                                 started);
    manifest["wall_time_s"] = elapsed.count();
    manifest["status"] = status;
    manifest["exit_code"] = exit_code;
    if (!error.empty()) manifest["error"] = error;
    write_json(out / "manifest.json", manifest);
    return exit_code;
}

} // namespace rotwave
