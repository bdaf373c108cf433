#pragma once

#include <cstdint>
#include <vector>

#include "drw/bounds.hpp"
#include "drw/graph.hpp"
#include "drw/report.hpp"
#include "drw/rng.hpp"

namespace drw {

/// Random spanning tree plus Bernoulli extra edges; edge density varies from
/// graph to graph so sweeps see trees, sparse and near-complete graphs.
FiniteGraph random_connected_graph(int n, RngEngine& eng);

struct SmallGraphSuiteOptions {
    std::uint64_t seed = 1;
    int n_graphs = 200;
    int n_max = 12;
    bool sabotage = false; // flips the tail-term sign of the first upper bound
    int workers = 1;
};

/// Exact return probability against both closed-form upper bounds, swept
/// over random connected graphs (delta = max degree), all admissible k, and
/// t in {0.5, 1, 2, 5, 10, 50, 200}. One worst-margin report per graph and
/// bound.
std::vector<BoundReport> thm1_sweep(const SmallGraphSuiteOptions& opts);

/// it_exact <= both closed forms over N in {4..64}, k in {1..N-2},
/// t in {0.1, 1, 10, 100}; one worst-margin report per (N, bound).
std::vector<BoundReport> lemma32_sweep();

/// Product-at-2t equals product of factors-at-t for random pairs of
/// connected graphs (<= 8 vertices); reports the worst deviation per pair
/// against a 1e-10 allowance, over t in {0.1, 1, 10}.
std::vector<BoundReport> lemma33_factorization_suite(std::uint64_t seed, int n_pairs,
                                                     int workers = 1);

/// eq7_cycle_comparison over random connected graphs with N <= 10 and
/// delta = max(3, max degree); per graph one worst-margin eigenvalue report
/// plus the two spectrum cross-checks.
std::vector<BoundReport> eq7_suite(std::uint64_t seed, int n_graphs, int workers = 1);

/// spectral gap <= brute-force Cheeger constant over random connected graphs
/// with 3 <= N <= n_max (delta = max degree).
std::vector<BoundReport> cheeger_chain_suite(std::uint64_t seed, int n_graphs, int n_max,
                                             int workers = 1);

/// Direct tail sums of the Phi(m) = m^{-1/2} distribution (truncated) against
/// heavy_tail_lower, for m in {1..m_max}; single worst-margin report.
std::vector<BoundReport> heavy_tail_oracle_suite(long m_max = 1000, long truncation = 1000000);

/// Lattice clusters in a size window [n_lo, n_hi] sampled near criticality:
/// per cluster the gap form 1 - beta_2 <= 12 sqrt(2) delta / sqrt(N) and the
/// pointwise lower bound on a log time grid.
struct PlanarGapSuiteOptions {
    std::uint64_t seed = 7;
    int n_clusters = 50;
    int n_lo = 289;
    int n_hi = 3000;
    double p = 0.5;
    int workers = 1;
};
std::vector<BoundReport> planar_cluster_gap_suite(const PlanarGapSuiteOptions& opts);

bool all_satisfied(const std::vector<BoundReport>& reports);

} // namespace drw
