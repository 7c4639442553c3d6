#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "rotwave/extension.hpp"
#include "rotwave/family.hpp"
#include "rotwave/lambda_omega.hpp"
#include "rotwave/solver.hpp"
#include "rotwave/spectral.hpp"

namespace rotwave {

// Full-precision decimal form, '.' separator, no locale surprises.
std::string format_double(double v);

void write_text_file(const std::filesystem::path& path, const std::string& text);

// Reduced vectors serialize in reduced_indices order; that order is part of
// the format.
std::string reduced_csv(const ReducedState& state);
nlohmann::json reduced_json(const ReducedState& state);

// One CSV row per lattice row i, header naming the j columns.
std::string full_csv(const FullState& full);
nlohmann::json full_json(const FullState& full);

nlohmann::json solve_report_json(const SolveReport& rep);
nlohmann::json ring_json(const RingProfile& ring);
nlohmann::json family_json(const EquilibriumFamily& family);
nlohmann::json pair_violations_json(const std::vector<PairViolation>& v);
nlohmann::json family_violations_json(const std::vector<FamilyViolation>& v);
nlohmann::json extrapolation_json(const Extrapolation& ex);
std::string increments_csv(const Extrapolation& ex);
nlohmann::json spectral_report_json(const SpectralReport& rep, int dimension);
nlohmann::json operator_header_json(const LinearizationOperator& op);
std::string operator_triplets(const LinearizationOperator& op);
std::string linf_csv(const std::vector<LinfRow>& rows);
nlohmann::json linf_json(const std::vector<LinfRow>& rows);
nlohmann::json reduction_report_json(const ReductionReport& rep);
std::string trajectory_csv(const Trajectory& traj);
nlohmann::json validation_json(const ValidationReport& rep,
                               const std::string& coupling);

} // namespace rotwave
