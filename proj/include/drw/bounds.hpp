#pragma once

#include <vector>

#include "drw/graph.hpp"
#include "drw/report.hpp"
#include "drw/spectral.hpp"

namespace drw {

/// Upper bound on the uniform-start return probability of the delayed walk
/// on a connected N-vertex graph with delay delta and second eigenvalue
/// beta2, for any cut index k in {1..N-2}:
///   1/N + delta (k/N) e^{-t(1-beta2)}
///       + sqrt(pi/32) delta sqrt(delta+2) / sqrt(t)
///         * exp(-32 t k^2 / ((delta+2) delta^2 N^2)).
double thm1_upper_i(int n, int delta, double beta2, int k, double t);

/// Variant with third term delta^2(delta+2)/(16t) * (N/k) * exp(same).
double thm1_upper_ii(int n, int delta, double beta2, int k, double t);

/// Planar lower bound 1/N + exp(-t K / sqrt(N)) / N with K = 12 sqrt(2) delta.
/// Requires N > 288.
double thm1_lower_planar(int n, int delta, double t);

/// I_t(k,N) = sum_{j=k+1}^{N-1} exp(-t (1 - cos(pi j / N))), and its two
/// closed-form majorants. Valid for N > 3, 1 <= k <= N-2, t > 0.
double it_exact(int k, int n, double t);
double it_bound_i(int k, int n, double t);
double it_bound_ii(int k, int n, double t);

/// Two-sided polynomial tail assumption A m^-a <= Phi(m) <= B m^-b.
struct TailParams {
    double big_a = 0.0; // A
    double big_b = 0.0; // B
    double a = 0.0;
    double b = 0.0;
};
void validate_tail_params(const TailParams& params);

/// Lower bound C / m^{a(1+1/b)} on sum_{k>=m} phi(k)/k for distributions
/// obeying the two-sided tail assumption, with C = (A/2)^{1+1/b} / B^{1/b}.
double heavy_tail_lower(const TailParams& params, long m);
double heavy_tail_constant(const TailParams& params);

/// Builds the product of g with the cycle C_delta, takes the delayed kernel
/// with delay delta+2 on it, and checks every sorted eigenvalue against the
/// spanning-cycle comparison bound
///   beta_hat_j <= 1 - (2/(delta+2)) (1 - cos(2 pi floor(j/2) / (delta N))),
/// the j-th largest value of the cycle bound multiset. Also cross-checks the
/// closed spectra of both product kernels (the delay-(delta+2) one against
/// the Kronecker-sum form, the equal-weight one against (beta_j + cos)/2).
/// One report per eigenvalue plus one per cross-check.
std::vector<BoundReport> eq7_cycle_comparison(const FiniteGraph& g, int delta,
                                              int dense_cap = kDefaultDenseCap);

/// Exact isoperimetric number min_{0<|A|<=n/2} |boundary(A)|/|A| by subset
/// enumeration. Throws SizeExceededError above brute_force_cap vertices.
double cheeger_constant(const FiniteGraph& g, int brute_force_cap = 22);

struct BoshierBound {
    double value = 0.0; // 12 sqrt(2) delta / sqrt(N)
    bool valid = false; // the planar guarantee needs N >= 289
};
BoshierBound boshier_bound(int n, int delta);

} // namespace drw
