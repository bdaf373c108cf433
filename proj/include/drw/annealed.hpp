#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "drw/bounds.hpp"
#include "drw/percolation.hpp"
#include "drw/report.hpp"
#include "drw/spectral.hpp"

namespace drw {

/// Monte-Carlo estimate of the annealed return probability
/// P_t = E[(1/|C|) Tr exp(-t(I-P))] on a time grid, with the paired excess
/// P_t - kappa and (optionally) the fixed-root diagonal estimate.
///
/// Censored samples contribute 0 to the kappa term and 0 to the trace term,
/// so p_t_hat is the lower envelope; the unexplored trace mass is bounded by
/// censored_fraction and must be read together with it.
struct AnnealedEstimate {
    std::vector<double> t_grid;
    std::vector<double> p_t_hat;
    std::vector<double> std_error;
    std::vector<double> excess_hat;       // per-sample trace - 1/|C|, averaged
    std::vector<double> excess_std_error;
    std::vector<double> root_p_t_hat;     // E[(exp(-t(I-P)))_{oo}], if computed
    std::vector<double> root_std_error;
    double kappa_hat = 0.0;               // E[1/|C|]
    double kappa_std_error = 0.0;
    double chi_hat = 0.0;                 // E[|C|]; lower bound under censoring
    double chi_std_error = 0.0;
    bool chi_reliable = true;
    double censored_fraction = 0.0;
    std::int64_t n_samples = 0;
    Family family = Family::square_lattice_2d;
    double p = 0.0;
    int delta = 0;
    bool has_root = false;
};

struct CampaignOptions {
    int dense_cap = kDefaultDenseCap;
    int probes = 32;      // Hutchinson probes for clusters above the dense cap
    int cheb_degree = 0;  // 0: derived from the largest grid time
    bool compute_root = false;
    int workers = 1;
};

/// One exact eigensolve per sample below the dense cap (all grid times are
/// then free); Chebyshev moments per sample above it. Deterministic in
/// model.seed for any worker count.
AnnealedEstimate annealed_campaign(const PercolationModel& model,
                                   const std::vector<double>& t_grid,
                                   std::int64_t n_samples, const CampaignOptions& opts = {});

/// Compares the fixed-root and uniform-start estimates of the annealed
/// return probability at one time; they agree in expectation on transitive
/// families. Satisfied when |difference| <= 4 combined standard errors.
BoundReport mass_transport_check(const PercolationModel& model, double t,
                                 std::int64_t n_samples, const CampaignOptions& opts = {});

/// Annealed upper bound with C = 27 delta (delta + 2):
///   P_t - kappa <= C E[|C|^alpha] t^{-(1+alpha)/2} + 3 standard errors,
/// checked at every grid time; the report carries the worst margin.
/// Requires 0 < alpha < tail_b (the tail exponent makes the moment finite).
BoundReport theorem3_upper_check(const AnnealedEstimate& est, int delta, double alpha,
                                 double moment_hat, double tail_b);

/// Annealed planar lower bound with D = e^-K (A/2) / (1 + (2B/A)^(1/b)),
/// checked at grid times above sqrt(288). D is astronomically small for
/// realistic delta; the note flags the vacuous margin.
BoundReport theorem3_lower_check(const AnnealedEstimate& est, int delta,
                                 const TailParams& tail);

/// Empirical E[min(|C|, cap)^alpha]; a lower bound under censoring.
double empirical_size_moment(const PercolationModel& model, std::int64_t n_samples,
                             double alpha, int workers = 1);

struct ExponentFit {
    double exponent = 0.0; // nu in P_t - kappa ~ c t^-nu
    double exponent_stderr = 0.0;
    double r_squared = 0.0;
    double t_min = 0.0;
    double t_max = 0.0;
    int points = 0;
};

/// Weighted log-log fit of the excess decay, using only grid times where
/// the excess clears 5 standard errors.
ExponentFit fit_decay_exponent(const AnnealedEstimate& est);

/// Exponent bracket implied by the critical decay laws: [0.6, 3.3] for the
/// tree, [(1+alpha)/2 - 0.15, 1 + 1/alpha + 0.3] for the lattice. Throws
/// FitUnreliableError when r^2 < 0.9. The report is two-sided: margin is
/// min(nu - lo, hi - nu).
BoundReport corollary1_exponent_check(const ExponentFit& fit, Family family, double alpha);

/// Both sides of the cluster-count sandwich
///   P_t - c chi/t <= kappa <= P_t, c = min{(d/4)(d^2+d+8), 108 d (d+1)},
/// at every grid time with 3-sigma slack; subcritical lattice only.
std::vector<BoundReport> kappa_sandwich_check(const AnnealedEstimate& est, int d,
                                              double chi_hat);

double kappa_sandwich_constant(int d);

/// Component count per site on the box {-L+1..L}^2 (free boundary), the
/// box-count route to kappa(p).
struct BoxCount {
    double kappa = 0.0;
    double std_error = 0.0;
    int box_half_width = 0;
    int n_realizations = 0;
};
BoxCount grimmett_kappa_boxcount(double p, int box_half_width, int n_realizations,
                                 std::uint64_t seed, int workers = 1);

/// CSV columns: t, p_t_hat, std_error, kappa_hat, censored_fraction.
void write_campaign_csv(std::ostream& out, const AnnealedEstimate& est);

} // namespace drw
