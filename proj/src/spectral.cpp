#include "rotwave/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <unordered_map>

#include <Eigen/SparseCholesky>

namespace rotwave {

namespace {

// Shared assembly for the pinned operator and the unpinned Laplacian. When
// `pin` is set, the pinned cell is dropped from the index set, edges into it
// are replaced by the potential P, and only its four neighbours get P entries.
LinearizationOperator assemble(const PinnedField& field, const CouplingFunction& H,
                               bool pin) {
    const auto& p = field.pinned;
    const int R = field.radius;

    std::vector<LatticeIndex> cells;
    cells.reserve(static_cast<std::size_t>(field.side()) * field.side());
    for (int i = p.i - R; i <= p.i + R; ++i)
        for (int j = p.j - R; j <= p.j + R; ++j)
            if (!pin || !(i == p.i && j == p.j)) cells.push_back({i, j});

    std::unordered_map<LatticeIndex, int> dense;
    dense.reserve(cells.size());
    for (std::size_t k = 0; k < cells.size(); ++k)
        dense.emplace(cells[k], static_cast<int>(k));

    std::vector<AEdge> edges;
    std::vector<PDiagEntry> pdiag;
    for (const auto& cell : cells) {
        // Right and up neighbours cover every unordered window edge once.
        for (auto [ni, nj] : {std::pair{cell.i + 1, cell.j},
                              std::pair{cell.i, cell.j + 1}}) {
            if (!field.in_window(ni, nj)) continue;
            auto it = dense.find({ni, nj});
            if (it == dense.end()) continue;  // the pinned cell
            double diff = wrap_to_pi(field.at(ni, nj) - field.at(cell.i, cell.j));
            edges.push_back({dense.at(cell), it->second, cell, {ni, nj},
                             H.eval_derivative(diff)});
        }
    }
    if (pin) {
        for (auto [ni, nj] : {std::pair{p.i - 1, p.j}, std::pair{p.i + 1, p.j},
                              std::pair{p.i, p.j - 1}, std::pair{p.i, p.j + 1}}) {
            LatticeIndex nb{ni, nj};
            pdiag.push_back({dense.at(nb), nb,
                             -H.eval_derivative(-field.at(ni, nj))});
        }
    }
    return {p, R, std::move(cells), std::move(edges), std::move(pdiag)};
}

} // namespace

PinnedField pin_field(const FullState& full, LatticeIndex pinned, int radius) {
    if (radius < 2) throw std::invalid_argument("pin_field: radius must be >= 2");
    if (!full.in_window(pinned.i - radius, pinned.j - radius) ||
        !full.in_window(pinned.i + radius, pinned.j + radius))
        throw std::invalid_argument("pin_field: window not covered by the field");

    PinnedField f;
    f.pinned = pinned;
    f.radius = radius;
    f.phi.resize(static_cast<std::size_t>(f.side()) * f.side());
    double base = full.at(pinned.i, pinned.j);
    for (int i = pinned.i - radius; i <= pinned.i + radius; ++i)
        for (int j = pinned.j - radius; j <= pinned.j + radius; ++j)
            f.at(i, j) = wrap_to_pi(full.at(i, j) - base);
    return f;
}

LinearizationOperator::LinearizationOperator(LatticeIndex pinned, int radius,
                                             std::vector<LatticeIndex> cells,
                                             std::vector<AEdge> a_edges,
                                             std::vector<PDiagEntry> p_diag)
    : pinned_(pinned), radius_(radius), cells_(std::move(cells)),
      a_edges_(std::move(a_edges)), p_diag_(std::move(p_diag)) {}

int LinearizationOperator::index_of(LatticeIndex cell) const {
    if (std::abs(cell.i - pinned_.i) > radius_ ||
        std::abs(cell.j - pinned_.j) > radius_)
        return -1;
    // Row-major offset, shifted down by one past the pinned cell when the
    // index set skips it.
    auto off = static_cast<long>(cell.i - (pinned_.i - radius_)) * side_() +
               (cell.j - (pinned_.j - radius_));
    bool skips_pinned =
        cells_.size() == static_cast<std::size_t>(side_()) * side_() - 1;
    if (skips_pinned) {
        auto pinned_off = static_cast<long>(radius_) * side_() + radius_;
        if (off == pinned_off) return -1;
        if (off > pinned_off) --off;
    }
    return static_cast<int>(off);
}

std::vector<double> LinearizationOperator::apply(std::span<const double> x) const {
    if (x.size() != cells_.size())
        throw std::invalid_argument("apply: dimension mismatch");
    std::vector<double> y(x.size(), 0.0);
    for (const auto& e : a_edges_) {
        double d = x[static_cast<std::size_t>(e.b)] - x[static_cast<std::size_t>(e.a)];
        y[static_cast<std::size_t>(e.a)] += e.weight * d;
        y[static_cast<std::size_t>(e.b)] -= e.weight * d;
    }
    for (const auto& pe : p_diag_)
        y[static_cast<std::size_t>(pe.index)] +=
            pe.value * x[static_cast<std::size_t>(pe.index)];
    return y;
}

double LinearizationOperator::quadratic_form(std::span<const double> x) const {
    if (x.size() != cells_.size())
        throw std::invalid_argument("quadratic_form: dimension mismatch");
    double q = 0.0;
    for (const auto& pe : p_diag_) {
        double v = x[static_cast<std::size_t>(pe.index)];
        q += -pe.value * v * v;
    }
    for (const auto& e : a_edges_) {
        double d = x[static_cast<std::size_t>(e.a)] - x[static_cast<std::size_t>(e.b)];
        q += e.weight * d * d;
    }
    return q;
}

Eigen::SparseMatrix<double> LinearizationOperator::matrix() const {
    auto n = static_cast<Eigen::Index>(cells_.size());
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(a_edges_.size() * 4 + p_diag_.size());
    for (const auto& e : a_edges_) {
        trip.emplace_back(e.a, e.b, e.weight);
        trip.emplace_back(e.b, e.a, e.weight);
        trip.emplace_back(e.a, e.a, -e.weight);
        trip.emplace_back(e.b, e.b, -e.weight);
    }
    for (const auto& pe : p_diag_) trip.emplace_back(pe.index, pe.index, pe.value);
    Eigen::SparseMatrix<double> L(n, n);
    L.setFromTriplets(trip.begin(), trip.end());
    return L;
}

LinearizationOperator build_linearization(const PinnedField& field,
                                          const CouplingFunction& H) {
    return assemble(field, H, true);
}

LinearizationOperator build_linearization(const FullState& full,
                                          const CouplingFunction& H,
                                          LatticeIndex pinned, int radius) {
    return assemble(pin_field(full, pinned, radius), H, true);
}

LinearizationOperator build_unpinned_laplacian(const FullState& full,
                                               const CouplingFunction& H,
                                               LatticeIndex centre, int radius) {
    return assemble(pin_field(full, centre, radius), H, false);
}

SpectralReport smallest_eigen_of_negL(const LinearizationOperator& op, double tol,
                                      std::uint64_t seed) {
    if (tol <= 0) throw std::invalid_argument("tolerance must be > 0");
    auto n = static_cast<Eigen::Index>(op.dimension());
    Eigen::SparseMatrix<double> B = -op.matrix();  // positive semidefinite

    // Small positive shift keeps the factorization definite even when the
    // kernel is nonempty (unpinned Laplacian).
    const double shift = 1e-3;
    Eigen::SparseMatrix<double> M = B;
    for (Eigen::Index k = 0; k < n; ++k) M.coeffRef(k, k) += shift;
    M.makeCompressed();
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt;
    ldlt.compute(M);
    if (ldlt.info() != Eigen::Success)
        throw spectral_error("inverse iteration: factorization failed", 0.0, 0);

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    Eigen::VectorXd v(n);
    for (Eigen::Index k = 0; k < n; ++k) v[k] = unif(rng);
    v.normalize();

    const int max_iterations = 50'000;
    double mu = 0.0;
    for (int it = 1; it <= max_iterations; ++it) {
        v = ldlt.solve(v);
        v.normalize();
        Eigen::VectorXd Bv = B * v;
        mu = v.dot(Bv);
        double res = (Bv - mu * v).norm();
        if (res <= tol)
            return {mu, -mu, res, it, op.truncation_radius()};
    }
    throw spectral_error("inverse iteration: residual stagnated above tolerance",
                         mu, max_iterations);
}

std::vector<double> linf_witness(const LinearizationOperator& op, int n) {
    if (n < 1) throw std::invalid_argument("linf_witness: n must be >= 1");
    if (op.truncation_radius() < n + 1)
        throw std::invalid_argument("linf_witness: truncation radius below n + 1");
    std::vector<double> x;
    x.reserve(static_cast<std::size_t>(op.dimension()));
    for (const auto& cell : op.cells()) {
        int k = lattice_distance(cell, op.pinned());
        x.push_back(k <= n ? static_cast<double>(k) / n : 1.0);
    }
    return x;
}

std::vector<LinfRow> linf_decay_check(const LinearizationOperator& op,
                                      const CouplingFunction& H, int n_max) {
    if (n_max < 1) throw std::invalid_argument("linf_decay_check: n_max must be >= 1");
    if (op.truncation_radius() < n_max + 2)
        throw std::invalid_argument("linf_decay_check: truncation radius below n_max + 2");

    std::vector<LinfRow> rows;
    rows.reserve(static_cast<std::size_t>(n_max));
    for (int n = 1; n <= n_max; ++n) {
        auto x = linf_witness(op, n);
        double wit_sup = 0.0;
        for (double v : x) wit_sup = std::max(wit_sup, std::abs(v));
        double img_sup = 0.0;
        for (double v : op.apply(x)) img_sup = std::max(img_sup, std::abs(v));
        rows.push_back({n, wit_sup, img_sup, 4 * H.max_derivative_on_core() / n});
    }
    return rows;
}

std::vector<LinfRow> linf_decay_check(const FullState& full,
                                      const CouplingFunction& H,
                                      LatticeIndex pinned, int n_max) {
    auto op = build_linearization(full, H, pinned, n_max + 2);
    return linf_decay_check(op, H, n_max);
}

} // namespace rotwave
