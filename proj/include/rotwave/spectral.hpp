#pragma once

#include <cstdint>
#include <cstdlib>
#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/SparseCore>

#include "rotwave/coupling.hpp"
#include "rotwave/extension.hpp"
#include "rotwave/lattice.hpp"

namespace rotwave {

// Phases relative to a pinned cell over the square window [pinned +- radius],
// row-major with i outermost. phi at the pinned cell is 0 by construction.
struct PinnedField {
    LatticeIndex pinned{};
    int radius = 0;
    std::vector<double> phi;  // (2*radius + 1)^2 values

    int side() const { return 2 * radius + 1; }
    bool in_window(int i, int j) const {
        return std::abs(i - pinned.i) <= radius && std::abs(j - pinned.j) <= radius;
    }
    std::size_t offset(int i, int j) const {
        return static_cast<std::size_t>(i - (pinned.i - radius)) * side() +
               static_cast<std::size_t>(j - (pinned.j - radius));
    }
    double at(int i, int j) const { return phi[offset(i, j)]; }
    double& at(int i, int j) { return phi[offset(i, j)]; }
};

// Subtracts the phase at `pinned` from the window [pinned +- radius].
// Precondition: the field covers the window and radius >= 2.
PinnedField pin_field(const FullState& full, LatticeIndex pinned, int radius);

struct AEdge {
    int a = 0;  // dense indices
    int b = 0;
    LatticeIndex cell_a{};
    LatticeIndex cell_b{};
    double weight = 0.0;  // H'(phase difference), nonnegative on the core
};

struct PDiagEntry {
    int index = 0;
    LatticeIndex cell{};
    double value = 0.0;  // -H'(-phi) at a neighbour of the pinned cell
};

// The linearization about the pinned field, truncated to the window with free
// boundary: L = P + A, where A couples neighbouring unpinned cells with
// weights H'(difference) and P acts at the neighbours of the pinned cell.
// Dense indices run row-major over the window, skipping the pinned cell.
class LinearizationOperator {
  public:
    LinearizationOperator(LatticeIndex pinned, int radius,
                          std::vector<LatticeIndex> cells,
                          std::vector<AEdge> a_edges,
                          std::vector<PDiagEntry> p_diag);

    int dimension() const { return static_cast<int>(cells_.size()); }
    int truncation_radius() const { return radius_; }
    LatticeIndex pinned() const { return pinned_; }
    const std::vector<LatticeIndex>& cells() const { return cells_; }
    const std::vector<AEdge>& a_edges() const { return a_edges_; }
    const std::vector<PDiagEntry>& p_diag() const { return p_diag_; }

    // Dense index of a window cell; -1 for the pinned cell or outside.
    int index_of(LatticeIndex cell) const;

    std::vector<double> apply(std::span<const double> x) const;  // L x

    // <-Lx, x> assembled from the potential and edge sums directly. Agrees
    // with the apply() route to 1e-10 relative; never negative.
    double quadratic_form(std::span<const double> x) const;

    Eigen::SparseMatrix<double> matrix() const;  // L

  private:
    int side_() const { return 2 * radius_ + 1; }

    LatticeIndex pinned_{};
    int radius_ = 0;
    std::vector<LatticeIndex> cells_;
    std::vector<AEdge> a_edges_;
    std::vector<PDiagEntry> p_diag_;
};

// Builds the pinned, truncated linearization from an extended field.
// Preconditions: radius >= 2 and the field covers [pinned +- radius].
LinearizationOperator build_linearization(const FullState& full,
                                          const CouplingFunction& H,
                                          LatticeIndex pinned, int radius);

LinearizationOperator build_linearization(const PinnedField& field,
                                          const CouplingFunction& H);

// Same window and weights but nothing pinned and no potential: the pure graph
// Laplacian part over all window cells. Its -L has the constants in the
// kernel, so the smallest eigenvalue is 0.
LinearizationOperator build_unpinned_laplacian(const FullState& full,
                                               const CouplingFunction& H,
                                               LatticeIndex centre, int radius);

struct spectral_error : std::runtime_error {
    spectral_error(const std::string& what, double best_estimate_, int iterations_)
        : std::runtime_error(what), best_estimate(best_estimate_),
          iterations(iterations_) {}
    double best_estimate = 0.0;
    int iterations = 0;
};

struct SpectralReport {
    double mu0_estimate = 0.0;     // smallest eigenvalue of -L
    double top_of_spectrum = 0.0;  // -mu0, the largest eigenvalue of L
    double eigen_residual = 0.0;   // |(-L)v - mu0 v|_2 at the returned pair
    int iterations = 0;
    int truncation_radius = 0;
};

// Shifted inverse iteration on -L with a deterministic seeded start vector,
// run until the eigenpair residual drops below tol. Throws spectral_error
// with the best estimate on stagnation.
SpectralReport smallest_eigen_of_negL(const LinearizationOperator& op,
                                      double tol = 1e-8,
                                      std::uint64_t seed = 2026);

// Ramp vector: entries k/n at lattice distance k <= n from the pinned cell, 1
// beyond. Sup norm exactly 1, successive differences at most 1/n.
// Precondition: n >= 1 and truncation radius >= n + 1.
std::vector<double> linf_witness(const LinearizationOperator& op, int n);

struct LinfRow {
    int n = 0;
    double witness_sup = 0.0;  // exactly 1
    double image_sup = 0.0;    // |L x^(n)|_inf
    double bound = 0.0;        // 4 * max H' on core / n
};

// Applies L to the ramp vectors for n = 1..n_max and tabulates the sup norms
// against the 4*maxH'/n bound. Precondition: truncation radius >= n_max + 2,
// so every row L touches is interior to the window.
std::vector<LinfRow> linf_decay_check(const LinearizationOperator& op,
                                      const CouplingFunction& H, int n_max);

// Convenience overload building the operator at radius n_max + 2.
std::vector<LinfRow> linf_decay_check(const FullState& full,
                                      const CouplingFunction& H,
                                      LatticeIndex pinned, int n_max);

} // namespace rotwave
