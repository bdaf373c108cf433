#include "drw/ids.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "drw/errors.hpp"
#include "drw/fitting.hpp"
#include "drw/graph.hpp"
#include "drw/parallel.hpp"
#include "drw/rng.hpp"
#include "box_percolation.hpp"

namespace drw {

namespace {

constexpr double kZeroTol = 1e-9;
constexpr int kLatticeDelta = 4;

} // namespace

double IdsCurve::value(double energy) const {
    const auto it = std::upper_bound(energies.begin(), energies.end(), energy + 1e-12);
    const double total = double(sites_per_realization) * n_realizations;
    return double(it - energies.begin()) / total;
}

double IdsCurve::laplace(double t) const {
    double sum = 0.0;
    for (double e : energies) sum += std::exp(-t * e);
    return sum / (double(sites_per_realization) * n_realizations);
}

IdsCurve ids_curve(double p, int box_half_width, int n_realizations, std::uint64_t seed,
                   int dense_cap, int workers) {
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("ids_curve: p outside [0,1]");
    if (box_half_width < 1) throw std::invalid_argument("ids_curve: need L >= 1");
    if (n_realizations < 1) throw std::invalid_argument("ids_curve: need realizations");
    const int side = 2 * box_half_width;
    const int sites = side * side;

    IdsCurve curve;
    curve.box_half_width = box_half_width;
    curve.n_realizations = n_realizations;
    curve.sites_per_realization = sites;
    curve.p = p;
    curve.energies_by_realization.assign(n_realizations, {});
    curve.zero_multiplicity.assign(n_realizations, 0);
    curve.component_count.assign(n_realizations, 0);

    parallel_for(n_realizations, workers, [&](std::int64_t r) {
        RngEngine eng = make_engine(seed, static_cast<std::uint64_t>(r));
        const std::vector<Edge> open = detail::sample_box_bonds(p, box_half_width, eng);

        detail::UnionFind uf(sites);
        for (const auto& [u, v] : open) uf.unite(u, v);
        curve.component_count[r] = uf.components;

        // Group sites by component root, then diagonalize each component.
        std::vector<std::vector<int>> members(sites);
        for (int v = 0; v < sites; ++v) members[uf.find(v)].push_back(v);
        std::vector<int> local_id(sites, -1);
        std::vector<std::vector<Edge>> component_edges(sites);
        for (int v = 0; v < sites; ++v) {
            const int root = uf.find(v);
            local_id[v] = int(std::lower_bound(members[root].begin(), members[root].end(), v) -
                              members[root].begin());
        }
        for (const auto& [u, v] : open)
            component_edges[uf.find(u)].emplace_back(local_id[u], local_id[v]);

        std::vector<double>& energies = curve.energies_by_realization[r];
        energies.reserve(sites);
        for (int root = 0; root < sites; ++root) {
            const auto& comp = members[root];
            if (comp.empty()) continue;
            const int n = int(comp.size());
            if (n == 1) {
                energies.push_back(0.0); // isolated site: P = 1, energy 0
                continue;
            }
            if (n > dense_cap)
                throw SizeExceededError("ids_curve: component of size " + std::to_string(n) +
                                        " exceeds dense cap");
            const FiniteGraph graph(n, component_edges[root]);
            const Spectrum spectrum = exact_spectrum(DrwKernel(graph, kLatticeDelta), dense_cap);
            for (int j = 0; j < n; ++j) energies.push_back(1.0 - spectrum.betas[j]);
        }
        std::sort(energies.begin(), energies.end());
        int zeros = 0;
        for (double e : energies) {
            if (e < kZeroTol) ++zeros;
            else break;
        }
        curve.zero_multiplicity[r] = zeros;
    });

    for (const auto& part : curve.energies_by_realization)
        curve.energies.insert(curve.energies.end(), part.begin(), part.end());
    std::sort(curve.energies.begin(), curve.energies.end());
    return curve;
}

BoundReport laplace_consistency(const IdsCurve& curve, const AnnealedEstimate& est,
                                double rel_tol) {
    if (std::abs(curve.p - est.p) > 1e-12)
        throw std::invalid_argument("laplace_consistency: mismatched retention probability");
    if (!est.has_root)
        throw std::invalid_argument("laplace_consistency: estimate lacks fixed-root curve");

    double worst_margin = std::numeric_limits<double>::infinity();
    double worst_lhs = 0.0, worst_rhs = 0.0, worst_t = 0.0;
    for (std::size_t s = 0; s < est.t_grid.size(); ++s) {
        const double t = est.t_grid[s];
        // Realization scatter of the Laplace transform.
        double mean = 0.0;
        std::vector<double> per(curve.n_realizations);
        for (int r = 0; r < curve.n_realizations; ++r) {
            double sum = 0.0;
            for (double e : curve.energies_by_realization[r]) sum += std::exp(-t * e);
            per[r] = sum / curve.sites_per_realization;
            mean += per[r];
        }
        mean /= curve.n_realizations;
        double var = 0.0;
        for (double v : per) var += (v - mean) * (v - mean);
        const double laplace_se =
            curve.n_realizations > 1
                ? std::sqrt(var / (curve.n_realizations - 1.0) / curve.n_realizations)
                : 0.0;

        const double root = est.root_p_t_hat[s];
        const double lhs = std::abs(mean - root);
        const double combined = std::sqrt(laplace_se * laplace_se +
                                          est.root_std_error[s] * est.root_std_error[s]);
        const double rhs = rel_tol * std::abs(mean) + 4.0 * combined;
        if (rhs - lhs < worst_margin) {
            worst_margin = rhs - lhs;
            worst_lhs = lhs;
            worst_rhs = rhs;
            worst_t = t;
        }
    }
    return make_report("laplace_ids",
                       {{"p", curve.p},
                        {"L", double(curve.box_half_width)},
                        {"realizations", double(curve.n_realizations)},
                        {"worst_t", worst_t}},
                       worst_lhs, worst_rhs);
}

BoundReport theorem2_window_check(const IdsCurve& curve, double alpha, double e_min,
                                  double e_max, int min_eigenvalues, double log_allowance) {
    if (alpha <= 0.0 || alpha >= 0.2)
        throw std::invalid_argument("theorem2_window_check: alpha must lie in (0, 1/5)");
    if (std::abs(curve.p - 0.5) > 1e-12)
        throw std::invalid_argument("theorem2_window_check: curve must be at critical p = 1/2");
    if (e_min <= 0.0 || e_max <= e_min)
        throw std::invalid_argument("theorem2_window_check: bad energy window");

    const auto lo = std::lower_bound(curve.energies.begin(), curve.energies.end(), e_min);
    const auto hi = std::upper_bound(curve.energies.begin(), curve.energies.end(), e_max);
    const long inside = hi - lo;
    if (inside < min_eigenvalues)
        throw InsufficientDataError("theorem2_window_check: only " + std::to_string(inside) +
                                    " eigenvalues in the window");

    const double total = double(curve.sites_per_realization) * curve.n_realizations;
    const double base = curve.n0();
    const int grid = 12;
    std::vector<double> xs, ys, sigmas;
    for (int i = 0; i < grid; ++i) {
        const double e = e_min * std::pow(e_max / e_min, double(i) / (grid - 1));
        const double mass = curve.value(e) - base;
        if (mass <= 0.0) continue;
        xs.push_back(e);
        ys.push_back(mass);
        sigmas.push_back(std::sqrt(mass / total)); // Poisson scatter of the count
    }
    const LogLogFit fit = weighted_loglog_fit(xs, ys, sigmas);

    const double slope_lo = 0.5 * (1.0 + alpha) - 0.2;
    const double slope_hi = (1.0 + 1.0 / alpha) * (1.0 + log_allowance);
    BoundReport r;
    r.bound_id = "thm2_window";
    r.inputs = {{"alpha", alpha},
                {"L", double(curve.box_half_width)},
                {"slope", fit.slope},
                {"slope_lo", slope_lo},
                {"slope_hi", slope_hi},
                {"e_min", e_min},
                {"e_max", e_max},
                {"r_squared", fit.r_squared}};
    r.lhs = fit.slope;
    r.rhs = slope_hi;
    r.margin = std::min(fit.slope - slope_lo, slope_hi - fit.slope);
    r.satisfied = fit.slope >= slope_lo - kBoundSlack && fit.slope <= slope_hi + kBoundSlack;
    return r;
}

void write_ids_csv(std::ostream& out, const IdsCurve& curve, int grid_points) {
    out << "E,N_of_E\n";
    out << 0 << ',' << format_double(curve.n0()) << '\n';
    const double e_lo = 1e-8;
    const double e_hi = 2.0;
    for (int i = 0; i <= grid_points; ++i) {
        const double e = e_lo * std::pow(e_hi / e_lo, double(i) / grid_points);
        out << format_double(e) << ',' << format_double(curve.value(e)) << '\n';
    }
}

} // namespace drw
