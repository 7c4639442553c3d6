#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rotwave/coupling.hpp"
#include "rotwave/extension.hpp"
#include "rotwave/family.hpp"
#include "rotwave/lambda_omega.hpp"
#include "rotwave/lattice.hpp"
#include "rotwave/solver.hpp"
#include "rotwave/spectral.hpp"
#include "rotwave/version.hpp"

namespace py = pybind11;
using namespace rotwave;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Rotating waves on phase oscillator lattices";
    m.attr("__version__") = kVersion;

    py::class_<LatticeIndex>(m, "LatticeIndex")
        .def(py::init<int, int>(), py::arg("i"), py::arg("j"))
        .def_readwrite("i", &LatticeIndex::i)
        .def_readwrite("j", &LatticeIndex::j)
        .def("__eq__", [](const LatticeIndex& a, const LatticeIndex& b) { return a == b; })
        .def("__repr__", [](const LatticeIndex& idx) {
            return "LatticeIndex(" + std::to_string(idx.i) + ", " +
                   std::to_string(idx.j) + ")";
        });

    m.def("reduced_indices", &reduced_indices, py::arg("N"));
    m.def("reduced_size", &reduced_size, py::arg("N"));
    m.def("lattice_distance", &lattice_distance, py::arg("a"), py::arg("b"));

    py::class_<CouplingFunction>(m, "CouplingFunction")
        .def(py::init<std::string, std::function<double(double)>,
                      std::function<double(double)>>(),
             py::arg("name"), py::arg("value"), py::arg("derivative"))
        .def("eval", &CouplingFunction::eval, py::arg("x"))
        .def("eval_derivative", &CouplingFunction::eval_derivative, py::arg("x"))
        .def_property_readonly("name", &CouplingFunction::name)
        .def_property_readonly("max_derivative_on_core",
                               &CouplingFunction::max_derivative_on_core)
        .def_static("sine", &CouplingFunction::sine);

    py::class_<ValidationReport>(m, "ValidationReport")
        .def_readonly("samples", &ValidationReport::samples)
        .def_readonly("derivative_consistent", &ValidationReport::derivative_consistent)
        .def_readonly("periodic", &ValidationReport::periodic)
        .def_readonly("odd", &ValidationReport::odd)
        .def_readonly("increasing_on_core", &ValidationReport::increasing_on_core)
        .def_readonly("positive_on_core", &ValidationReport::positive_on_core)
        .def_readonly("max_derivative_mismatch",
                      &ValidationReport::max_derivative_mismatch)
        .def("passes_core_conditions", &ValidationReport::passes_core_conditions);

    m.def("validate_coupling", &validate_coupling, py::arg("H"), py::arg("samples"));
    m.def("coupling_by_name", &coupling_by_name, py::arg("name"),
          py::return_value_policy::copy);
    m.def("register_coupling", &register_coupling, py::arg("H"));
    m.def("registered_couplings", &registered_couplings);

    py::class_<ReducedState>(m, "ReducedState")
        .def(py::init([](int N, std::vector<double> values) {
                 if (values.size() != reduced_size(N))
                     throw std::invalid_argument("values size mismatch");
                 return ReducedState{N, std::move(values)};
             }),
             py::arg("N"), py::arg("values"))
        .def_readonly("N", &ReducedState::N)
        .def_readonly("values", &ReducedState::values)
        .def("at", [](const ReducedState& s, LatticeIndex idx) { return s.at(idx); },
             py::arg("index"));

    py::class_<SolveReport>(m, "SolveReport")
        .def_readonly("state", &SolveReport::state)
        .def_readonly("residual_inf_norm", &SolveReport::residual_inf_norm)
        .def_readonly("relaxation_steps", &SolveReport::relaxation_steps)
        .def_readonly("newton_steps", &SolveReport::newton_steps)
        .def_readonly("monotone_violations", &SolveReport::monotone_violations)
        .def_readonly("bound_violations", &SolveReport::bound_violations)
        .def_readonly("min_entry", &SolveReport::min_entry)
        .def_readonly("max_entry", &SolveReport::max_entry);

    m.def(
        "residual",
        [](const ReducedState& s, const CouplingFunction& H) { return residual(s, H); },
        py::arg("state"), py::arg("H"));
    m.def("residual_inf_norm", &residual_inf_norm, py::arg("state"), py::arg("H"));
    m.def(
        "relax_to_equilibrium",
        [](int N, const CouplingFunction& H, double tol, long max_steps, double dt) {
            SolverOptions opts;
            opts.tolerance = tol;
            opts.max_steps = max_steps;
            opts.dt = dt;
            return relax_to_equilibrium(N, H, opts);
        },
        py::arg("N"), py::arg("H"), py::arg("tol") = 1e-10,
        py::arg("max_steps") = 10'000'000L, py::arg("dt") = 0.1);
    m.def(
        "newton_refine",
        [](const ReducedState& start, const CouplingFunction& H, double tol) {
            return newton_refine(start, H, tol);
        },
        py::arg("start"), py::arg("H"), py::arg("tol") = 1e-13);
    m.def(
        "solve_equilibrium",
        [](int N, const CouplingFunction& H, double tol, double newton_tol) {
            SolverOptions opts;
            opts.tolerance = tol;
            return solve_equilibrium(N, H, opts, newton_tol);
        },
        py::arg("N"), py::arg("H"), py::arg("tol") = 1e-10,
        py::arg("newton_tol") = 1e-13);

    py::class_<FullState>(m, "FullState")
        .def_readonly("N", &FullState::N)
        .def_readonly("values", &FullState::values)
        .def("at", [](const FullState& f, int i, int j) {
                 if (!f.in_window(i, j))
                     throw std::out_of_range("index outside the window");
                 return f.at(i, j);
             },
             py::arg("i"), py::arg("j"))
        .def("grid", [](const FullState& f) {
            std::vector<std::vector<double>> rows;
            for (int i = 1 - f.N; i <= f.N; ++i) {
                std::vector<double> row;
                for (int j = 1 - f.N; j <= f.N; ++j) row.push_back(f.at(i, j));
                rows.push_back(std::move(row));
            }
            return rows;
        });

    m.def("extend_full", &extend_full, py::arg("reduced"));
    m.def("full_residual", &full_residual, py::arg("full"), py::arg("H"));
    m.def("full_residual_inf_norm", &full_residual_inf_norm, py::arg("full"),
          py::arg("H"));

    py::class_<RingProfile>(m, "RingProfile")
        .def_readonly("k", &RingProfile::k)
        .def_readonly("phases", &RingProfile::phases)
        .def_readonly("winding", &RingProfile::winding);
    m.def("ring_profile", &ring_profile, py::arg("full"), py::arg("k"));

    py::class_<EquilibriumFamily>(m, "EquilibriumFamily")
        .def_readonly("Nmin", &EquilibriumFamily::Nmin)
        .def_readonly("Nmax", &EquilibriumFamily::Nmax)
        .def_readonly("members", &EquilibriumFamily::members)
        .def("at", &EquilibriumFamily::at, py::arg("N"),
             py::return_value_policy::reference_internal);
    m.def(
        "solve_family",
        [](int Nmin, int Nmax, const CouplingFunction& H, double tol,
           double newton_tol) {
            SolverOptions opts;
            opts.tolerance = tol;
            return solve_family(Nmin, Nmax, H, opts, newton_tol);
        },
        py::arg("Nmin"), py::arg("Nmax"), py::arg("H"), py::arg("tol") = 1e-10,
        py::arg("newton_tol") = 1e-13);

    py::class_<PairViolation>(m, "PairViolation")
        .def_readonly("lower", &PairViolation::lower)
        .def_readonly("upper", &PairViolation::upper)
        .def_readonly("lower_value", &PairViolation::lower_value)
        .def_readonly("upper_value", &PairViolation::upper_value);
    py::class_<FamilyViolation>(m, "FamilyViolation")
        .def_readonly("N", &FamilyViolation::N)
        .def_readonly("index", &FamilyViolation::index)
        .def_readonly("value_small", &FamilyViolation::value_small)
        .def_readonly("value_large", &FamilyViolation::value_large);

    m.def("check_row_monotone", &check_row_monotone, py::arg("state"),
          py::arg("slack") = 1e-12);
    m.def("check_column_monotone", &check_column_monotone, py::arg("state"),
          py::arg("slack") = 1e-12);
    m.def("check_N_monotone", &check_N_monotone, py::arg("family"),
          py::arg("slack") = 1e-10);

    py::class_<Extrapolation>(m, "Extrapolation")
        .def_readonly("index", &Extrapolation::index)
        .def_readonly("estimate", &Extrapolation::estimate)
        .def_readonly("sizes", &Extrapolation::sizes)
        .def_readonly("increments", &Extrapolation::increments)
        .def_readonly("decay_exponent", &Extrapolation::decay_exponent);
    m.def("extrapolate", &extrapolate, py::arg("family"), py::arg("index"));

    py::class_<LinearizationOperator>(m, "LinearizationOperator")
        .def_property_readonly("dimension", &LinearizationOperator::dimension)
        .def_property_readonly("truncation_radius",
                               &LinearizationOperator::truncation_radius)
        .def_property_readonly("pinned", &LinearizationOperator::pinned)
        .def("index_of", &LinearizationOperator::index_of, py::arg("cell"))
        .def("apply",
             [](const LinearizationOperator& op, const std::vector<double>& x) {
                 return op.apply(x);
             },
             py::arg("x"))
        .def("quadratic_form",
             [](const LinearizationOperator& op, const std::vector<double>& x) {
                 return op.quadratic_form(x);
             },
             py::arg("x"));

    m.def(
        "build_linearization",
        [](const FullState& full, const CouplingFunction& H, LatticeIndex pinned,
           int radius) { return build_linearization(full, H, pinned, radius); },
        py::arg("full"), py::arg("H"), py::arg("pinned"), py::arg("radius"));
    m.def("build_unpinned_laplacian", &build_unpinned_laplacian, py::arg("full"),
          py::arg("H"), py::arg("centre"), py::arg("radius"));

    py::class_<SpectralReport>(m, "SpectralReport")
        .def_readonly("mu0_estimate", &SpectralReport::mu0_estimate)
        .def_readonly("top_of_spectrum", &SpectralReport::top_of_spectrum)
        .def_readonly("eigen_residual", &SpectralReport::eigen_residual)
        .def_readonly("iterations", &SpectralReport::iterations)
        .def_readonly("truncation_radius", &SpectralReport::truncation_radius);
    m.def("smallest_eigen_of_negL", &smallest_eigen_of_negL, py::arg("op"),
          py::arg("tol") = 1e-8, py::arg("seed") = 2026);

    m.def("linf_witness", &linf_witness, py::arg("op"), py::arg("n"));
    py::class_<LinfRow>(m, "LinfRow")
        .def_readonly("n", &LinfRow::n)
        .def_readonly("witness_sup", &LinfRow::witness_sup)
        .def_readonly("image_sup", &LinfRow::image_sup)
        .def_readonly("bound", &LinfRow::bound);
    m.def(
        "linf_decay_check",
        [](const LinearizationOperator& op, const CouplingFunction& H, int n_max) {
            return linf_decay_check(op, H, n_max);
        },
        py::arg("op"), py::arg("H"), py::arg("n_max"));

    py::class_<ComplexLatticeState>(m, "ComplexLatticeState")
        .def(py::init<int, double, double>(), py::arg("N_window"), py::arg("alpha"),
             py::arg("omega"))
        .def_readonly("N_window", &ComplexLatticeState::N_window)
        .def_readonly("alpha", &ComplexLatticeState::alpha)
        .def_readonly("omega", &ComplexLatticeState::omega)
        .def_readwrite("z", &ComplexLatticeState::z)
        .def("set_at",
             [](ComplexLatticeState& s, int i, int j, std::complex<double> v) {
                 s.at(i, j) = v;
             },
             py::arg("i"), py::arg("j"), py::arg("value"))
        .def("get_at",
             [](const ComplexLatticeState& s, int i, int j) { return s.at(i, j); },
             py::arg("i"), py::arg("j"));

    py::class_<Trajectory>(m, "Trajectory")
        .def("__len__", &Trajectory::size)
        .def("time", &Trajectory::time, py::arg("k"))
        .def("state", &Trajectory::state, py::arg("k"));
    m.def("simulate", &simulate, py::arg("init"), py::arg("T"), py::arg("dt_sample"));

    py::class_<PolarField>(m, "PolarField")
        .def_readonly("N_window", &PolarField::N_window)
        .def_readonly("r", &PolarField::r)
        .def_readonly("theta", &PolarField::theta);
    m.def("polar_decompose", &polar_decompose, py::arg("state"), py::arg("t"),
          py::arg("Omega") = std::nullopt);

    py::class_<ReductionReport>(m, "ReductionReport")
        .def_readonly("alpha", &ReductionReport::alpha)
        .def_readonly("omega", &ReductionReport::omega)
        .def_readonly("T", &ReductionReport::T)
        .def_readonly("max_amplitude_deviation",
                      &ReductionReport::max_amplitude_deviation)
        .def_readonly("max_phase_drift", &ReductionReport::max_phase_drift);
    m.def("reduction_error", &reduction_error, py::arg("alpha"), py::arg("omega"),
          py::arg("phase_eq"), py::arg("T"), py::arg("dt_sample") = 1.0);

    py::register_exception<convergence_error>(m, "ConvergenceError");
    py::register_exception<refinement_error>(m, "RefinementError");
    py::register_exception<spectral_error>(m, "SpectralError");
    py::register_exception<instability_error>(m, "InstabilityError");
    py::register_exception<decomposition_error>(m, "DecompositionError");
}
