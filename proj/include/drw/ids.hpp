#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "drw/annealed.hpp"
#include "drw/report.hpp"
#include "drw/spectral.hpp"

namespace drw {

/// Empirical integrated density of states of I - P (delayed-walk
/// normalization at ambient delta = 4, spectrum in [0,2]) for percolation on
/// the box {-L+1..L}^2 with free boundary, averaged over realizations.
struct IdsCurve {
    std::vector<double> energies; // pooled over realizations, sorted ascending
    std::vector<std::vector<double>> energies_by_realization;
    std::vector<int> zero_multiplicity; // per realization, eigenvalues < 1e-9
    std::vector<int> component_count;   // per realization, union-find count
    int box_half_width = 0;
    int n_realizations = 0;
    long sites_per_realization = 0;
    double p = 0.0;

    /// N_Lambda(E): fraction of eigenvalues <= E (with a 1e-12 tolerance so
    /// exact zeros are counted at E = 0).
    double value(double energy) const;
    double n0() const { return value(0.0); }
    /// (1/(|Lambda| R)) sum_i exp(-t E_i), the finite-box Laplace transform.
    double laplace(double t) const;
};

/// Builds the percolation subgraph on the box per realization, splits it
/// into components, and diagonalizes each component's I - P. Throws
/// SizeExceededError if a component exceeds dense_cap.
IdsCurve ids_curve(double p, int box_half_width, int n_realizations, std::uint64_t seed,
                   int dense_cap = kDefaultDenseCap, int workers = 1);

/// Compares the finite-box Laplace transform of the curve with the
/// fixed-root annealed estimate at every grid time. Satisfied when the worst
/// deviation is within rel_tol * value + 4 combined standard errors.
BoundReport laplace_consistency(const IdsCurve& curve, const AnnealedEstimate& est,
                                double rel_tol = 0.05);

/// Log-log slope of N(E) - N(0) over [e_min, e_max] against the critical
/// exponent window [(1+alpha)/2 - 0.2, (1 + 1/alpha)(1 + log_allowance)].
/// Requires critical p and alpha in (0, 1/5); throws InsufficientDataError
/// when fewer than min_eigenvalues fall inside the window.
BoundReport theorem2_window_check(const IdsCurve& curve, double alpha, double e_min = 1e-3,
                                  double e_max = 1e-1, int min_eigenvalues = 200,
                                  double log_allowance = 0.0);

/// CSV columns: E, N_of_E, on a fixed evaluation grid (E = 0 plus a
/// geometric grid up to 2).
void write_ids_csv(std::ostream& out, const IdsCurve& curve, int grid_points = 512);

} // namespace drw
