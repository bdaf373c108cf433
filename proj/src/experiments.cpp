#include "drw/experiments.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>
#include <stdexcept>

#include "drw/errors.hpp"
#include "drw/parallel.hpp"
#include "drw/percolation.hpp"
#include "drw/spectral.hpp"

namespace drw {

namespace {

const std::vector<double> kThm1Times = {0.5, 1.0, 2.0, 5.0, 10.0, 50.0, 200.0};
const std::vector<double> kLemma32Times = {0.1, 1.0, 10.0, 100.0};
const std::vector<double> kLemma33Times = {0.1, 1.0, 10.0};

struct Worst {
    double margin = std::numeric_limits<double>::infinity();
    double lhs = 0.0;
    double rhs = 0.0;
    std::vector<std::pair<std::string, double>> inputs;

    void offer(double lhs_, double rhs_, std::vector<std::pair<std::string, double>> inputs_) {
        if (rhs_ - lhs_ < margin) {
            margin = rhs_ - lhs_;
            lhs = lhs_;
            rhs = rhs_;
            inputs = std::move(inputs_);
        }
    }
};

} // namespace

FiniteGraph random_connected_graph(int n, RngEngine& eng) {
    if (n < 1) throw std::invalid_argument("random_connected_graph: need n >= 1");
    std::set<Edge> edges;
    for (int v = 1; v < n; ++v) {
        const int parent = static_cast<int>(eng() % static_cast<std::uint64_t>(v));
        edges.emplace(parent, v);
    }
    static constexpr double kDensities[] = {0.0, 0.05, 0.15, 0.4};
    const double q = kDensities[eng() % 4];
    if (q > 0.0) {
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (bernoulli(eng, q)) edges.emplace(u, v);
    }
    return FiniteGraph(n, std::vector<Edge>(edges.begin(), edges.end()));
}

std::vector<BoundReport> thm1_sweep(const SmallGraphSuiteOptions& opts) {
    if (opts.n_max < 3) return {};
    std::vector<std::vector<BoundReport>> per_graph(opts.n_graphs);
    parallel_for(opts.n_graphs, opts.workers, [&](std::int64_t g) {
        RngEngine eng = make_engine(opts.seed, static_cast<std::uint64_t>(g));
        const int n = 3 + static_cast<int>(eng() % static_cast<std::uint64_t>(opts.n_max - 2));
        const FiniteGraph graph = random_connected_graph(n, eng);
        const int delta = graph.max_degree();
        const Spectrum spectrum = exact_spectrum(DrwKernel(graph, delta));
        const double beta2 = spectrum.betas[1];

        Worst worst_i, worst_ii;
        for (int k = 1; k <= n - 2; ++k) {
            for (double t : kThm1Times) {
                const double exact = return_probability(spectrum, t);
                double bound_i = thm1_upper_i(n, delta, beta2, k, t);
                if (opts.sabotage) {
                    // Sensitivity self-test: flip the sign of the tail term.
                    const double tail = bound_i - 1.0 / n -
                                        delta * (double(k) / n) * std::exp(-t * (1.0 - beta2));
                    bound_i -= 2.0 * tail;
                }
                const double bound_ii = thm1_upper_ii(n, delta, beta2, k, t);
                std::vector<std::pair<std::string, double>> in = {
                    {"N", double(n)}, {"delta", double(delta)}, {"k", double(k)},
                    {"t", t},         {"beta2", beta2},         {"graph", double(g)}};
                worst_i.offer(exact, bound_i, in);
                worst_ii.offer(exact, bound_ii, std::move(in));
            }
        }
        per_graph[g].push_back(
            make_report("thm1_i", std::move(worst_i.inputs), worst_i.lhs, worst_i.rhs));
        per_graph[g].push_back(
            make_report("thm1_ii", std::move(worst_ii.inputs), worst_ii.lhs, worst_ii.rhs));
    });
    std::vector<BoundReport> reports;
    for (auto& chunk : per_graph)
        for (auto& r : chunk) reports.push_back(std::move(r));
    return reports;
}

std::vector<BoundReport> lemma32_sweep() {
    std::vector<BoundReport> reports;
    for (int n = 4; n <= 64; ++n) {
        Worst worst_i, worst_ii;
        for (int k = 1; k <= n - 2; ++k) {
            for (double t : kLemma32Times) {
                const double exact = it_exact(k, n, t);
                std::vector<std::pair<std::string, double>> in = {
                    {"N", double(n)}, {"k", double(k)}, {"t", t}};
                worst_i.offer(exact, it_bound_i(k, n, t), in);
                worst_ii.offer(exact, it_bound_ii(k, n, t), std::move(in));
            }
        }
        reports.push_back(
            make_report("lem32_i", std::move(worst_i.inputs), worst_i.lhs, worst_i.rhs));
        reports.push_back(
            make_report("lem32_ii", std::move(worst_ii.inputs), worst_ii.lhs, worst_ii.rhs));
    }
    return reports;
}

std::vector<BoundReport> lemma33_factorization_suite(std::uint64_t seed, int n_pairs,
                                                     int workers) {
    std::vector<BoundReport> reports(n_pairs);
    parallel_for(n_pairs, workers, [&](std::int64_t i) {
        RngEngine eng = make_engine(seed, static_cast<std::uint64_t>(i));
        const int nx = 2 + static_cast<int>(eng() % 7);
        const int ny = 2 + static_cast<int>(eng() % 7);
        const FiniteGraph gx = random_connected_graph(nx, eng);
        const FiniteGraph gy = random_connected_graph(ny, eng);
        const DrwKernel kx(gx, std::max(1, gx.max_degree()));
        const DrwKernel ky(gy, std::max(1, gy.max_degree()));

        const Matrix combined = product_kernel_matrix(kx, ky);
        Eigen::SelfAdjointEigenSolver<Matrix> solver(combined, Eigen::EigenvaluesOnly);
        const Vector eigs = solver.eigenvalues();
        const Spectrum sx = exact_spectrum(kx);
        const Spectrum sy = exact_spectrum(ky);

        Worst worst;
        for (double t : kLemma33Times) {
            double product_side = 0.0;
            for (long j = 0; j < eigs.size(); ++j)
                product_side += std::exp(-2.0 * t * (1.0 - eigs[j]));
            product_side /= double(nx) * ny;
            const double factor_side =
                return_probability(sx, t) * return_probability(sy, t);
            worst.offer(std::abs(product_side - factor_side), 1e-10,
                        {{"nx", double(nx)}, {"ny", double(ny)}, {"t", t}, {"pair", double(i)}});
        }
        reports[i] = make_report("lem33_factorization", std::move(worst.inputs), worst.lhs,
                                 worst.rhs);
    });
    return reports;
}

std::vector<BoundReport> eq7_suite(std::uint64_t seed, int n_graphs, int workers) {
    std::vector<std::vector<BoundReport>> per_graph(n_graphs);
    parallel_for(n_graphs, workers, [&](std::int64_t i) {
        RngEngine eng = make_engine(seed, static_cast<std::uint64_t>(i));
        const int n = 2 + static_cast<int>(eng() % 9);
        const FiniteGraph graph = random_connected_graph(n, eng);
        const int delta = std::max(3, graph.max_degree());
        const auto reports = eq7_cycle_comparison(graph, delta);

        Worst worst;
        for (const auto& r : reports) {
            if (r.bound_id != "eq7_compare") {
                per_graph[i].push_back(r);
                continue;
            }
            auto in = r.inputs;
            in.emplace_back("graph", double(i));
            worst.offer(r.lhs, r.rhs, std::move(in));
        }
        per_graph[i].push_back(
            make_report("eq7_compare", std::move(worst.inputs), worst.lhs, worst.rhs));
    });
    std::vector<BoundReport> reports;
    for (auto& chunk : per_graph)
        for (auto& r : chunk) reports.push_back(std::move(r));
    return reports;
}

std::vector<BoundReport> cheeger_chain_suite(std::uint64_t seed, int n_graphs, int n_max,
                                             int workers) {
    if (n_max < 3) return {};
    std::vector<BoundReport> reports(n_graphs);
    parallel_for(n_graphs, workers, [&](std::int64_t i) {
        RngEngine eng = make_engine(seed, static_cast<std::uint64_t>(i));
        const int n = 3 + static_cast<int>(eng() % static_cast<std::uint64_t>(n_max - 2));
        const FiniteGraph graph = random_connected_graph(n, eng);
        const int delta = graph.max_degree();
        const double gap = spectral_gap(exact_spectrum(DrwKernel(graph, delta)));
        const double isoperimetric = cheeger_constant(graph);
        reports[i] = make_report(
            "cheeger_le_isoperimetric",
            {{"N", double(n)}, {"delta", double(delta)}, {"graph", double(i)}}, gap,
            isoperimetric);
    });
    return reports;
}

std::vector<BoundReport> heavy_tail_oracle_suite(long m_max, long truncation) {
    // phi(k) = k^{-1/2} - (k+1)^{-1/2} for k < T, phi(T) = T^{-1/2}; then
    // Phi(m) = m^{-1/2} exactly for m <= T, so A = B = 1, a = b = 1/2.
    const TailParams params{1.0, 1.0, 0.5, 0.5};
    std::vector<double> tail_over_k(truncation + 2, 0.0);
    for (long k = truncation; k >= 1; --k) {
        const double phi = k == truncation
                               ? 1.0 / std::sqrt(double(k))
                               : 1.0 / std::sqrt(double(k)) - 1.0 / std::sqrt(double(k + 1));
        tail_over_k[k] = tail_over_k[k + 1] + phi / k;
    }
    Worst worst;
    for (long m = 1; m <= m_max; ++m)
        worst.offer(heavy_tail_lower(params, m), tail_over_k[m],
                    {{"m", double(m)}, {"truncation", double(truncation)}});
    return {make_report("lem34_heavy_tail", std::move(worst.inputs), worst.lhs, worst.rhs)};
}

std::vector<BoundReport> planar_cluster_gap_suite(const PlanarGapSuiteOptions& opts) {
    const PercolationModel model =
        PercolationModel::square_lattice(opts.p, opts.n_hi + 1, opts.seed);

    // Cheap size-only scan for streams landing in the window, then the
    // expensive eigensolves in parallel.
    std::vector<std::uint64_t> accepted;
    for (std::uint64_t stream = 0; static_cast<int>(accepted.size()) < opts.n_clusters;
         ++stream) {
        if (stream > 1000000ULL)
            throw InsufficientDataError("planar_cluster_gap_suite: window too rare");
        const ClusterSize s = sample_cluster_size(model, stream);
        if (!s.censored && s.size >= opts.n_lo && s.size <= opts.n_hi)
            accepted.push_back(stream);
    }

    const std::vector<double> times = {1.0, 10.0, 100.0, 1000.0};
    std::vector<std::vector<BoundReport>> per_cluster(accepted.size());
    parallel_for(static_cast<std::int64_t>(accepted.size()), opts.workers, [&](std::int64_t i) {
        const ClusterSample sample = sample_cluster(model, accepted[i]);
        const int n = sample.size;
        const Spectrum spectrum =
            exact_spectrum(DrwKernel(sample.graph, model.delta), std::max(n, kDefaultDenseCap));
        const double gap = spectral_gap(spectrum);
        const double bound = boshier_bound(n, model.delta).value;
        per_cluster[i].push_back(make_report(
            "thm1_iii_gap",
            {{"N", double(n)}, {"delta", double(model.delta)}, {"stream", double(accepted[i])}},
            gap, bound));

        Worst worst;
        for (double t : times)
            worst.offer(thm1_lower_planar(n, model.delta, t), return_probability(spectrum, t),
                        {{"N", double(n)}, {"t", t}, {"stream", double(accepted[i])}});
        per_cluster[i].push_back(
            make_report("thm1_iii_pointwise", std::move(worst.inputs), worst.lhs, worst.rhs));
    });
    std::vector<BoundReport> reports;
    for (auto& chunk : per_cluster)
        for (auto& r : chunk) reports.push_back(std::move(r));
    return reports;
}

bool all_satisfied(const std::vector<BoundReport>& reports) {
    return std::all_of(reports.begin(), reports.end(),
                       [](const BoundReport& r) { return r.satisfied; });
}

} // namespace drw
