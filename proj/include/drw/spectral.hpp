#pragma once

#include <cstdint>

#include "drw/graph.hpp"
#include "drw/types.hpp"

namespace drw {

inline constexpr int kDefaultDenseCap = 3000;

/// Transition kernel of the delayed random walk on a finite graph:
/// P(v,w) = 1/delta on edges, P(v,v) = 1 - deg(v)/delta, else 0.
///
/// Requires delta >= max_degree (otherwise a diagonal entry would be
/// negative). P is symmetric and doubly stochastic; it is kept implicit and
/// applied through the adjacency lists, with a dense realization on demand.
class DrwKernel {
public:
    DrwKernel(FiniteGraph graph, int delta);

    const FiniteGraph& graph() const { return graph_; }
    int delta() const { return delta_; }
    int size() const { return graph_.vertex_count(); }

    /// y = P x via neighbor lists; no allocation beyond y.
    void apply(const Vector& x, Vector& y) const;
    Vector apply(const Vector& x) const;

    Matrix dense() const;

private:
    FiniteGraph graph_;
    int delta_;
};

/// Eigenvalues of a DRW kernel, sorted descending: beta_1 >= ... >= beta_n.
/// For a connected graph beta_1 = 1 > beta_2.
struct Spectrum {
    Vector betas;
    int n = 0;
    int delta = 0;
};

/// Full eigendecomposition; column j of vectors pairs with betas[j].
struct EigenSystem {
    Vector betas;
    Matrix vectors;
    int delta = 0;
};

/// Dense symmetric eigensolve, eigenvalues only.
/// Throws SizeExceededError when the graph exceeds dense_cap.
Spectrum exact_spectrum(const DrwKernel& kernel, int dense_cap = kDefaultDenseCap);

EigenSystem exact_eigensystem(const DrwKernel& kernel, int dense_cap = kDefaultDenseCap);

/// max_j ||P v_j - beta_j v_j||_2, a residual certificate for the eigensolve.
double max_eigen_residual(const DrwKernel& kernel, const EigenSystem& system);

/// Uniform-start return probability (1/n) sum_j exp(-t (1 - beta_j)).
double return_probability(const Spectrum& spectrum, double t);

/// Diagonal heat-kernel entry (exp(-t(I-P)))_{vv}.
double heat_diag_entry(const EigenSystem& system, int v, double t);

/// 1 - beta_2. Requires n >= 2; throws DegenerateSpectrumError when the
/// graph is disconnected (beta_2 = 1 within tolerance).
double spectral_gap(const Spectrum& spectrum);

/// Spectrum of the symmetrized product kernel (P_a ox I + I ox P_b)/2:
/// all pairwise means (beta_i + beta_j)/2, sorted descending.
Spectrum product_spectrum(const Spectrum& a, const Spectrum& b);

/// Dense (P_a ox I + I ox P_b)/2 on the vertex order used by
/// cartesian_product (index = x*n_b + v).
Matrix product_kernel_matrix(const DrwKernel& a, const DrwKernel& b);

} // namespace drw
