#include "drw/annealed.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "drw/errors.hpp"
#include "drw/fitting.hpp"
#include "drw/heat_trace.hpp"
#include "drw/parallel.hpp"
#include "drw/rng.hpp"
#include "box_percolation.hpp"

namespace drw {

namespace {

constexpr std::uint64_t kProbeSalt = 0xC2B2AE3D27D4EB4FULL;

struct SampleRow {
    int size = 0;
    bool censored = false;
    std::vector<double> trace; // per grid time; zero when censored
    std::vector<double> root;
};

struct MeanStd {
    double mean = 0.0;
    double std_error = 0.0;
};

MeanStd reduce(const std::vector<double>& values) {
    const std::int64_t n = static_cast<std::int64_t>(values.size());
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= n;
    double var = 0.0;
    for (double v : values) var += (v - mean) * (v - mean);
    return MeanStd{mean, n > 1 ? std::sqrt(var / (n - 1.0) / n) : 0.0};
}

void validate_t_grid(const std::vector<double>& t_grid) {
    if (t_grid.empty()) throw std::invalid_argument("campaign: empty time grid");
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        if (t_grid[i] < 0.0) throw std::invalid_argument("campaign: negative time");
        if (i > 0 && t_grid[i] <= t_grid[i - 1])
            throw std::invalid_argument("campaign: time grid must be strictly increasing");
    }
}

} // namespace

AnnealedEstimate annealed_campaign(const PercolationModel& model,
                                   const std::vector<double>& t_grid,
                                   std::int64_t n_samples, const CampaignOptions& opts) {
    model.validate();
    validate_t_grid(t_grid);
    if (n_samples < 1) throw std::invalid_argument("annealed_campaign: need n_samples >= 1");

    const double t_max = t_grid.back();
    const int degree = opts.cheb_degree > 0 ? opts.cheb_degree : default_cheb_degree(t_max);
    std::vector<ChebyshevHeatSeries> series;
    series.reserve(t_grid.size());
    for (double t : t_grid) series.push_back(chebyshev_heat_series(t, degree));

    std::vector<SampleRow> rows(n_samples);
    parallel_for(n_samples, opts.workers, [&](std::int64_t i) {
        SampleRow row;
        row.trace.assign(t_grid.size(), 0.0);
        if (opts.compute_root) row.root.assign(t_grid.size(), 0.0);
        const ClusterSample sample = sample_cluster(model, static_cast<std::uint64_t>(i));
        row.size = sample.size;
        row.censored = sample.censored;
        if (!sample.censored) {
            const DrwKernel kernel(sample.graph, model.delta);
            if (sample.size <= opts.dense_cap) {
                if (opts.compute_root) {
                    const EigenSystem system = exact_eigensystem(kernel, opts.dense_cap);
                    const Spectrum spectrum{system.betas, sample.size, model.delta};
                    for (std::size_t s = 0; s < t_grid.size(); ++s) {
                        row.trace[s] = return_probability(spectrum, t_grid[s]);
                        row.root[s] = heat_diag_entry(system, sample.root, t_grid[s]);
                    }
                } else {
                    const Spectrum spectrum = exact_spectrum(kernel, opts.dense_cap);
                    for (std::size_t s = 0; s < t_grid.size(); ++s)
                        row.trace[s] = return_probability(spectrum, t_grid[s]);
                }
            } else {
                const std::uint64_t trace_seed =
                    splitmix64(substream_seed(model.seed, static_cast<std::uint64_t>(i)) ^
                               kProbeSalt);
                const auto estimates = stochastic_heat_trace_multi(kernel, t_grid, opts.probes,
                                                                   degree, trace_seed);
                for (std::size_t s = 0; s < t_grid.size(); ++s)
                    row.trace[s] = estimates[s].value;
                if (opts.compute_root) {
                    const auto diag = chebyshev_diag_entry_multi(kernel, sample.root, series);
                    for (std::size_t s = 0; s < t_grid.size(); ++s) row.root[s] = diag[s];
                }
            }
        }
        rows[i] = std::move(row);
    });

    AnnealedEstimate est;
    est.t_grid = t_grid;
    est.n_samples = n_samples;
    est.family = model.family;
    est.p = model.p;
    est.delta = model.delta;
    est.has_root = opts.compute_root;

    std::vector<double> scratch(n_samples);
    std::int64_t censored = 0;
    for (const auto& row : rows) censored += row.censored ? 1 : 0;
    est.censored_fraction = double(censored) / n_samples;

    for (std::int64_t i = 0; i < n_samples; ++i)
        scratch[i] = rows[i].censored ? 0.0 : 1.0 / rows[i].size;
    MeanStd kappa = reduce(scratch);
    est.kappa_hat = kappa.mean;
    est.kappa_std_error = kappa.std_error;

    for (std::int64_t i = 0; i < n_samples; ++i) scratch[i] = rows[i].size;
    MeanStd chi = reduce(scratch);
    est.chi_hat = chi.mean;
    est.chi_std_error = chi.std_error;
    est.chi_reliable =
        censored == 0 && model.p < PercolationModel::critical_p(model.family, model.delta);

    for (std::size_t s = 0; s < t_grid.size(); ++s) {
        for (std::int64_t i = 0; i < n_samples; ++i) scratch[i] = rows[i].trace[s];
        MeanStd trace = reduce(scratch);
        est.p_t_hat.push_back(trace.mean);
        est.std_error.push_back(trace.std_error);

        for (std::int64_t i = 0; i < n_samples; ++i)
            scratch[i] = rows[i].trace[s] - (rows[i].censored ? 0.0 : 1.0 / rows[i].size);
        MeanStd excess = reduce(scratch);
        est.excess_hat.push_back(excess.mean);
        est.excess_std_error.push_back(excess.std_error);

        if (opts.compute_root) {
            for (std::int64_t i = 0; i < n_samples; ++i) scratch[i] = rows[i].root[s];
            MeanStd root = reduce(scratch);
            est.root_p_t_hat.push_back(root.mean);
            est.root_std_error.push_back(root.std_error);
        }
    }
    return est;
}

BoundReport mass_transport_check(const PercolationModel& model, double t,
                                 std::int64_t n_samples, const CampaignOptions& opts) {
    CampaignOptions with_root = opts;
    with_root.compute_root = true;
    const AnnealedEstimate est = annealed_campaign(model, {t}, n_samples, with_root);
    const double diff = std::abs(est.root_p_t_hat[0] - est.p_t_hat[0]);
    const double combined =
        std::sqrt(est.root_std_error[0] * est.root_std_error[0] +
                  est.std_error[0] * est.std_error[0]);
    return make_report("mass_transport",
                       {{"family", model.family == Family::square_lattice_2d ? 0.0 : 1.0},
                        {"p", model.p},
                        {"t", t},
                        {"n_samples", double(n_samples)},
                        {"root_hat", est.root_p_t_hat[0]},
                        {"trace_hat", est.p_t_hat[0]}},
                       diff, 4.0 * combined);
}

BoundReport theorem3_upper_check(const AnnealedEstimate& est, int delta, double alpha,
                                 double moment_hat, double tail_b) {
    if (alpha <= 0.0 || alpha >= tail_b)
        throw std::invalid_argument(
            "theorem3_upper_check: need 0 < alpha < b for the moment to exist");
    const double c = 27.0 * delta * (delta + 2.0);
    double worst_margin = std::numeric_limits<double>::infinity();
    double worst_lhs = 0.0, worst_rhs = 0.0, worst_t = 0.0;
    for (std::size_t s = 0; s < est.t_grid.size(); ++s) {
        const double t = est.t_grid[s];
        if (t <= 0.0) continue;
        const double rhs = c * moment_hat * std::pow(t, -0.5 * (1.0 + alpha)) +
                           3.0 * est.excess_std_error[s];
        const double lhs = est.excess_hat[s];
        if (rhs - lhs < worst_margin) {
            worst_margin = rhs - lhs;
            worst_lhs = lhs;
            worst_rhs = rhs;
            worst_t = t;
        }
    }
    return make_report("thm3_upper",
                       {{"delta", double(delta)},
                        {"alpha", alpha},
                        {"C", c},
                        {"moment_hat", moment_hat},
                        {"worst_t", worst_t}},
                       worst_lhs, worst_rhs);
}

BoundReport theorem3_lower_check(const AnnealedEstimate& est, int delta,
                                 const TailParams& tail) {
    if (est.family != Family::square_lattice_2d)
        throw FamilyMismatchError("theorem3_lower_check: planar (lattice) family required");
    validate_tail_params(tail);
    const double k_const = 12.0 * std::numbers::sqrt2 * delta;
    const double d_const = std::exp(-k_const) * (tail.big_a / 2.0) /
                           (1.0 + std::pow(2.0 * tail.big_b / tail.big_a, 1.0 / tail.b));
    const double t_floor = std::sqrt(288.0);
    double worst_margin = std::numeric_limits<double>::infinity();
    double worst_lhs = 0.0, worst_rhs = 0.0, worst_t = 0.0;
    bool any = false;
    for (std::size_t s = 0; s < est.t_grid.size(); ++s) {
        const double t = est.t_grid[s];
        if (t <= t_floor) continue;
        any = true;
        const double lhs = d_const * std::pow(t, -2.0 * tail.a * (1.0 + 1.0 / tail.b));
        const double rhs = est.excess_hat[s] + 3.0 * est.excess_std_error[s];
        if (rhs - lhs < worst_margin) {
            worst_margin = rhs - lhs;
            worst_lhs = lhs;
            worst_rhs = rhs;
            worst_t = t;
        }
    }
    if (!any)
        throw InsufficientDataError("theorem3_lower_check: no grid times above sqrt(288)");
    return make_report("thm3_lower",
                       {{"delta", double(delta)}, {"D", d_const}, {"worst_t", worst_t}},
                       worst_lhs, worst_rhs,
                       d_const < 1e-15 ? "vacuous-margin" : "");
}

double empirical_size_moment(const PercolationModel& model, std::int64_t n_samples,
                             double alpha, int workers) {
    model.validate();
    if (n_samples < 1) throw std::invalid_argument("empirical_size_moment: need samples");
    std::vector<double> values(n_samples);
    parallel_for(n_samples, workers, [&](std::int64_t i) {
        const ClusterSize s = sample_cluster_size(model, static_cast<std::uint64_t>(i));
        values[i] = std::pow(double(s.size), alpha);
    });
    return reduce(values).mean;
}

ExponentFit fit_decay_exponent(const AnnealedEstimate& est) {
    std::vector<double> ts, ys, sigmas;
    for (std::size_t s = 0; s < est.t_grid.size(); ++s) {
        if (est.t_grid[s] <= 0.0) continue;
        if (est.excess_hat[s] <= 5.0 * est.excess_std_error[s]) continue;
        ts.push_back(est.t_grid[s]);
        ys.push_back(est.excess_hat[s]);
        sigmas.push_back(est.excess_std_error[s]);
    }
    const LogLogFit fit = weighted_loglog_fit(ts, ys, sigmas);
    ExponentFit out;
    out.exponent = -fit.slope;
    out.exponent_stderr = fit.slope_stderr;
    out.r_squared = fit.r_squared;
    out.t_min = ts.front();
    out.t_max = ts.back();
    out.points = fit.points;
    return out;
}

BoundReport corollary1_exponent_check(const ExponentFit& fit, Family family, double alpha) {
    if (fit.r_squared < 0.9)
        throw FitUnreliableError("corollary1_exponent_check: r^2 = " +
                                 format_double(fit.r_squared) + " below 0.9");
    double lo = 0.0, hi = 0.0;
    if (family == Family::homogeneous_tree) {
        lo = 0.75 - 0.15;
        hi = 3.0 + 0.3;
    } else {
        if (alpha <= 0.0) throw std::invalid_argument("corollary1: alpha must be positive");
        lo = 0.5 * (1.0 + alpha) - 0.15;
        hi = 1.0 + 1.0 / alpha + 0.3;
    }
    BoundReport r;
    r.bound_id = "cor1_exponent";
    r.inputs = {{"nu", fit.exponent},
                {"nu_lo", lo},
                {"nu_hi", hi},
                {"stderr", fit.exponent_stderr},
                {"r_squared", fit.r_squared}};
    r.lhs = fit.exponent;
    r.rhs = hi;
    r.margin = std::min(fit.exponent - lo, hi - fit.exponent);
    r.satisfied = fit.exponent >= lo - kBoundSlack && fit.exponent <= hi + kBoundSlack;
    return r;
}

double kappa_sandwich_constant(int d) {
    if (d < 1) throw std::invalid_argument("kappa_sandwich_constant: need d >= 1");
    return std::min(d / 4.0 * (double(d) * d + d + 8.0), 108.0 * d * (d + 1.0));
}

std::vector<BoundReport> kappa_sandwich_check(const AnnealedEstimate& est, int d,
                                              double chi_hat) {
    if (est.family != Family::square_lattice_2d)
        throw FamilyMismatchError("kappa_sandwich_check: lattice family required");
    if (est.p >= 0.5)
        throw FamilyMismatchError("kappa_sandwich_check: subcritical p required");
    const double c = kappa_sandwich_constant(d);

    double up_margin = std::numeric_limits<double>::infinity();
    BoundReport upper, lower;
    double low_margin = std::numeric_limits<double>::infinity();
    for (std::size_t s = 0; s < est.t_grid.size(); ++s) {
        const double t = est.t_grid[s];
        if (t <= 0.0) continue;
        const double sigma = std::sqrt(est.std_error[s] * est.std_error[s] +
                                       est.kappa_std_error * est.kappa_std_error);
        // kappa <= P_t (+ slack)
        {
            const double lhs = est.kappa_hat;
            const double rhs = est.p_t_hat[s] + 3.0 * sigma;
            if (rhs - lhs < up_margin) {
                up_margin = rhs - lhs;
                upper = make_report("kappa_upper",
                                    {{"d", double(d)}, {"t", t}, {"kappa_hat", est.kappa_hat}},
                                    lhs, rhs);
            }
        }
        // P_t - c chi / t <= kappa (+ slack, chi noise propagated)
        {
            const double chi_term = c * chi_hat / t;
            const double slack = 3.0 * std::sqrt(sigma * sigma +
                                                 std::pow(c * est.chi_std_error / t, 2.0));
            const double lhs = est.p_t_hat[s] - chi_term;
            const double rhs = est.kappa_hat + slack;
            if (rhs - lhs < low_margin) {
                low_margin = rhs - lhs;
                lower = make_report(
                    "kappa_lower",
                    {{"d", double(d)}, {"t", t}, {"c", c}, {"chi_hat", chi_hat}}, lhs, rhs);
            }
        }
    }
    return {upper, lower};
}

BoxCount grimmett_kappa_boxcount(double p, int box_half_width, int n_realizations,
                                 std::uint64_t seed, int workers) {
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("boxcount: p outside [0,1]");
    if (box_half_width < 1) throw std::invalid_argument("boxcount: need L >= 1");
    if (n_realizations < 1) throw std::invalid_argument("boxcount: need realizations");
    const int side = 2 * box_half_width;
    const int sites = side * side;
    std::vector<double> kappas(n_realizations);
    parallel_for(n_realizations, workers, [&](std::int64_t r) {
        RngEngine eng = make_engine(seed, static_cast<std::uint64_t>(r));
        detail::UnionFind uf(sites);
        const int local_side = side;
        for (int row = 0; row < local_side; ++row) {
            for (int col = 0; col < local_side; ++col) {
                const int site = row * local_side + col;
                if (col + 1 < local_side && bernoulli(eng, p)) uf.unite(site, site + 1);
                if (row + 1 < local_side && bernoulli(eng, p)) uf.unite(site, site + local_side);
            }
        }
        kappas[r] = double(uf.components) / sites;
    });
    MeanStd stats = reduce(kappas);
    return BoxCount{stats.mean, stats.std_error, box_half_width, n_realizations};
}

void write_campaign_csv(std::ostream& out, const AnnealedEstimate& est) {
    out << "t,p_t_hat,std_error,kappa_hat,censored_fraction\n";
    for (std::size_t s = 0; s < est.t_grid.size(); ++s)
        out << format_double(est.t_grid[s]) << ',' << format_double(est.p_t_hat[s]) << ','
            << format_double(est.std_error[s]) << ',' << format_double(est.kappa_hat) << ','
            << format_double(est.censored_fraction) << '\n';
}

} // namespace drw
