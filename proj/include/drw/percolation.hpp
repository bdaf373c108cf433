#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "drw/graph.hpp"

namespace drw {

enum class Family { square_lattice_2d, homogeneous_tree };

/// Bernoulli bond percolation sampler configuration.
///
/// delta is the ambient degree (4 on the square lattice, >= 3 on the tree)
/// and is also the delay used for delayed walks on sampled clusters, so that
/// estimates are comparable across clusters of one campaign.
struct PercolationModel {
    Family family = Family::square_lattice_2d;
    int delta = 4;
    double p = 0.5;
    int size_cap = 20000;
    std::uint64_t seed = 0;

    void validate() const;

    static PercolationModel square_lattice(double p, int size_cap, std::uint64_t seed);
    static PercolationModel tree(int delta, double p, int size_cap, std::uint64_t seed);
    /// p_c: 1/2 for square-lattice bonds, 1/(delta-1) for the tree.
    static double critical_p(Family family, int delta);
};

/// One sampled cluster of the root, relabeled 0..size-1 in discovery order
/// (the root is vertex 0). censored means exploration hit size_cap, so the
/// true cluster is at least this large and the graph may be partial.
struct ClusterSample {
    FiniteGraph graph;
    int root = 0;
    int size = 0;
    bool censored = false;
    std::vector<std::array<int, 2>> coordinates; // lattice family only
};

/// Deterministic in (model.seed, stream_index); edge states are drawn once
/// at first encounter and cached for the exploration's lifetime (the lattice
/// needs the cache for cycles, the tree draws offspring counts directly).
ClusterSample sample_cluster(const PercolationModel& model, std::uint64_t stream_index);

/// Size-only fast path; agrees exactly with sample_cluster on the same stream.
struct ClusterSize {
    int size = 0;
    bool censored = false;
};
ClusterSize sample_cluster_size(const PercolationModel& model, std::uint64_t stream_index);

/// Empirical survival function Phi(m) over a threshold grid, with binomial
/// 95% confidence intervals and a log-log least-squares slope over
/// [fit_m_lo, fit_m_hi]. Censored samples count as >= size_cap.
struct TailEstimate {
    std::vector<long> m_grid;
    std::vector<double> phi_hat;
    std::vector<double> ci_low;
    std::vector<double> ci_high;
    double slope = 0.0;      // Phi(m) ~ m^-slope over the fit window
    double slope_stderr = 0.0;
    double r_squared = 0.0;
    std::int64_t n_samples = 0;
    double censored_fraction = 0.0;
};

TailEstimate tail_survey(const PercolationModel& model, std::int64_t n_samples,
                         std::vector<long> m_grid, long fit_m_lo, long fit_m_hi,
                         int workers = 1);

/// CSV columns: m, phi_hat, ci_low, ci_high.
void write_tail_csv(std::ostream& out, const TailEstimate& estimate);

/// Cluster dump: graph text format, then one "x y" line per vertex for the
/// lattice family.
void write_cluster_text(std::ostream& out, const ClusterSample& sample);

} // namespace drw
