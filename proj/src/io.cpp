#include "rotwave/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace rotwave {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    out << text;
}

std::string reduced_csv(const ReducedState& state) {
    std::string out = "i,j,theta\n";
    auto cells = reduced_indices(state.N);
    for (std::size_t k = 0; k < cells.size(); ++k) {
        out += std::to_string(cells[k].i) + "," + std::to_string(cells[k].j) + "," +
               format_double(state.values[k]) + "\n";
    }
    return out;
}

nlohmann::json reduced_json(const ReducedState& state) {
    nlohmann::json indices = nlohmann::json::array();
    for (const auto& idx : reduced_indices(state.N))
        indices.push_back({idx.i, idx.j});
    return {{"N", state.N}, {"indices", indices}, {"theta", state.values}};
}

std::string full_csv(const FullState& full) {
    int N = full.N;
    std::string out = "i\\j";
    for (int j = 1 - N; j <= N; ++j) out += "," + std::to_string(j);
    out += "\n";
    for (int i = 1 - N; i <= N; ++i) {
        out += std::to_string(i);
        for (int j = 1 - N; j <= N; ++j) out += "," + format_double(full.at(i, j));
        out += "\n";
    }
    return out;
}

nlohmann::json full_json(const FullState& full) {
    int N = full.N;
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 1 - N; i <= N; ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int j = 1 - N; j <= N; ++j) row.push_back(full.at(i, j));
        rows.push_back(std::move(row));
    }
    return {{"N", N}, {"first_index", 1 - N}, {"values", rows}};
}

nlohmann::json solve_report_json(const SolveReport& rep) {
    return {{"N", rep.state.N},
            {"residual_inf_norm", rep.residual_inf_norm},
            {"relaxation_steps", rep.relaxation_steps},
            {"newton_steps", rep.newton_steps},
            {"monotone_violations", rep.monotone_violations},
            {"bound_violations", rep.bound_violations},
            {"min_entry", rep.min_entry},
            {"max_entry", rep.max_entry}};
}

nlohmann::json ring_json(const RingProfile& ring) {
    return {{"k", ring.k}, {"winding", ring.winding}, {"phases", ring.phases}};
}

nlohmann::json family_json(const EquilibriumFamily& family) {
    nlohmann::json members = nlohmann::json::array();
    for (const auto& rep : family.members) {
        members.push_back({{"N", rep.state.N},
                           {"theta", rep.state.values},
                           {"residual_inf_norm", rep.residual_inf_norm}});
    }
    return {{"Nmin", family.Nmin},
            {"Nmax", family.Nmax},
            {"tolerance", family.tolerance},
            {"members", members}};
}

namespace {

nlohmann::json index_json(LatticeIndex idx) {
    return nlohmann::json::array({idx.i, idx.j});
}

} // namespace

nlohmann::json pair_violations_json(const std::vector<PairViolation>& v) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& pv : v) {
        out.push_back({{"lower", index_json(pv.lower)},
                       {"upper", index_json(pv.upper)},
                       {"lower_value", pv.lower_value},
                       {"upper_value", pv.upper_value}});
    }
    return out;
}

nlohmann::json family_violations_json(const std::vector<FamilyViolation>& v) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& fv : v) {
        out.push_back({{"N", fv.N},
                       {"index", index_json(fv.index)},
                       {"value_small", fv.value_small},
                       {"value_large", fv.value_large}});
    }
    return out;
}

nlohmann::json extrapolation_json(const Extrapolation& ex) {
    nlohmann::json out = {{"index", index_json(ex.index)},
                          {"estimate", ex.estimate},
                          {"sizes", ex.sizes},
                          {"increments", ex.increments}};
    if (std::isfinite(ex.decay_exponent))
        out["decay_exponent"] = ex.decay_exponent;
    else
        out["decay_exponent"] = nullptr;
    return out;
}

std::string increments_csv(const Extrapolation& ex) {
    std::string out = "N,increment\n";
    for (std::size_t k = 0; k < ex.increments.size(); ++k)
        out += std::to_string(ex.sizes[k]) + "," + format_double(ex.increments[k]) +
               "\n";
    return out;
}

nlohmann::json spectral_report_json(const SpectralReport& rep, int dimension) {
    return {{"mu0_estimate", rep.mu0_estimate},
            {"top_of_spectrum", rep.top_of_spectrum},
            {"eigen_residual", rep.eigen_residual},
            {"iterations", rep.iterations},
            {"truncation_radius", rep.truncation_radius},
            {"dimension", dimension}};
}

nlohmann::json operator_header_json(const LinearizationOperator& op) {
    nlohmann::json pdiag = nlohmann::json::array();
    for (const auto& pe : op.p_diag()) {
        pdiag.push_back({{"index", pe.index},
                         {"cell", index_json(pe.cell)},
                         {"value", pe.value}});
    }
    return {{"dimension", op.dimension()},
            {"truncation_radius", op.truncation_radius()},
            {"pinned", index_json(op.pinned())},
            {"edge_count", op.a_edges().size()},
            {"p_diag", pdiag}};
}

std::string operator_triplets(const LinearizationOperator& op) {
    // Symmetric coordinate form of L, one "row col value" line per stored
    // entry, rows in dense-index order.
    Eigen::SparseMatrix<double> L = op.matrix();
    std::string out;
    for (int k = 0; k < L.outerSize(); ++k) {
        for (Eigen::SparseMatrix<double>::InnerIterator it(L, k); it; ++it) {
            out += std::to_string(it.row()) + " " + std::to_string(it.col()) + " " +
                   format_double(it.value()) + "\n";
        }
    }
    return out;
}

std::string linf_csv(const std::vector<LinfRow>& rows) {
    std::string out = "n,witness_sup,image_sup,bound\n";
    for (const auto& r : rows) {
        out += std::to_string(r.n) + "," + format_double(r.witness_sup) + "," +
               format_double(r.image_sup) + "," + format_double(r.bound) + "\n";
    }
    return out;
}

nlohmann::json linf_json(const std::vector<LinfRow>& rows) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& r : rows) {
        out.push_back({{"n", r.n},
                       {"witness_sup", r.witness_sup},
                       {"image_sup", r.image_sup},
                       {"bound", r.bound}});
    }
    return out;
}

nlohmann::json reduction_report_json(const ReductionReport& rep) {
    return {{"alpha", rep.alpha},
            {"omega", rep.omega},
            {"T", rep.T},
            {"max_amplitude_deviation", rep.max_amplitude_deviation},
            {"max_phase_drift", rep.max_phase_drift}};
}

std::string trajectory_csv(const Trajectory& traj) {
    std::string out = "t,i,j,re,im\n";
    int N = traj.N_window();
    for (std::size_t s = 0; s < traj.size(); ++s) {
        ComplexLatticeState st = traj.state(s);
        std::string t = format_double(traj.time(s));
        for (int i = 1 - N; i <= N; ++i) {
            for (int j = 1 - N; j <= N; ++j) {
                const auto& z = st.at(i, j);
                out += t + "," + std::to_string(i) + "," + std::to_string(j) + "," +
                       format_double(z.real()) + "," + format_double(z.imag()) +
                       "\n";
            }
        }
    }
    return out;
}

nlohmann::json validation_json(const ValidationReport& rep,
                               const std::string& coupling) {
    return {{"coupling", coupling},
            {"samples", rep.samples},
            {"derivative_consistent", rep.derivative_consistent},
            {"periodic", rep.periodic},
            {"odd", rep.odd},
            {"increasing_on_core", rep.increasing_on_core},
            {"positive_on_core", rep.positive_on_core},
            {"max_derivative_mismatch", rep.max_derivative_mismatch},
            {"passes_core_conditions", rep.passes_core_conditions()}};
}

} // namespace rotwave
