#include "drw/percolation.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <unordered_map>

#include "drw/fitting.hpp"
#include "drw/parallel.hpp"
#include "drw/report.hpp"
#include "drw/rng.hpp"

namespace drw {

namespace {

// Canonical key of a lattice bond: zigzag-encoded endpoint (x,y) plus the
// axis bit (0: towards +x, 1: towards +y).
std::uint64_t zigzag(int v) {
    return static_cast<std::uint64_t>((static_cast<std::uint32_t>(v) << 1) ^
                                      static_cast<std::uint32_t>(v >> 31));
}

std::uint64_t bond_key(int x, int y, int axis) {
    return (zigzag(x) << 33) | (zigzag(y) << 1) | static_cast<std::uint64_t>(axis);
}

std::uint64_t site_key(int x, int y) { return (zigzag(x) << 32) | zigzag(y); }

struct LatticeExplorer {
    const PercolationModel& model;
    RngEngine eng;
    std::unordered_map<std::uint64_t, bool> bond_state;
    std::unordered_map<std::uint64_t, int> id_of_coord;
    std::vector<std::array<int, 2>> coords;
    std::vector<int> parent;
    std::vector<Edge> edges;
    bool censored = false;

    explicit LatticeExplorer(const PercolationModel& m, std::uint64_t stream)
        : model(m), eng(make_engine(m.seed, stream)) {}

    bool bond_open(int x, int y, int axis) {
        const auto key = bond_key(x, y, axis);
        auto it = bond_state.find(key);
        if (it != bond_state.end()) return it->second;
        const bool open = bernoulli(eng, model.p);
        bond_state.emplace(key, open);
        return open;
    }

    void run(bool build_graph) {
        coords.push_back({0, 0});
        parent.push_back(-1);
        id_of_coord.emplace(site_key(0, 0), 0);
        for (std::size_t head = 0; head < coords.size(); ++head) {
            const auto [x, y] = coords[head];
            // Fixed visiting order keeps the stream deterministic: +x, -x, +y, -y.
            const std::array<std::array<int, 3>, 4> probes = {{
                {x, y, 0},      // bond to (x+1, y)
                {x - 1, y, 0},  // bond to (x-1, y)
                {x, y, 1},      // bond to (x, y+1)
                {x, y - 1, 1},  // bond to (x, y-1)
            }};
            const std::array<std::array<int, 2>, 4> targets = {{
                {x + 1, y},
                {x - 1, y},
                {x, y + 1},
                {x, y - 1},
            }};
            for (int dir = 0; dir < 4; ++dir) {
                if (!bond_open(probes[dir][0], probes[dir][1], probes[dir][2])) continue;
                const auto [tx, ty] = targets[dir];
                const auto key = site_key(tx, ty);
                auto it = id_of_coord.find(key);
                if (it == id_of_coord.end()) {
                    if (static_cast<int>(coords.size()) >= model.size_cap) {
                        censored = true;
                        return;
                    }
                    const int id = static_cast<int>(coords.size());
                    id_of_coord.emplace(key, id);
                    coords.push_back({tx, ty});
                    parent.push_back(static_cast<int>(head));
                    if (build_graph) edges.emplace_back(static_cast<int>(head), id);
                } else if (build_graph) {
                    // Record cross edges from the later-processed endpoint so
                    // each open in-cluster bond enters exactly once.
                    const int other = it->second;
                    if (other < static_cast<int>(head) && other != parent[head])
                        edges.emplace_back(other, static_cast<int>(head));
                }
            }
        }
    }
};

struct TreeExplorer {
    const PercolationModel& model;
    RngEngine eng;
    int size = 0;
    bool censored = false;
    std::vector<Edge> edges;

    explicit TreeExplorer(const PercolationModel& m, std::uint64_t stream)
        : model(m), eng(make_engine(m.seed, stream)) {}

    void run(bool build_graph) {
        std::vector<int> pending; // vertices whose children are not yet drawn
        size = 1;
        pending.push_back(0);
        for (std::size_t head = 0; head < pending.size(); ++head) {
            const int v = pending[head];
            const int slots = v == 0 ? model.delta : model.delta - 1;
            for (int s = 0; s < slots; ++s) {
                if (!bernoulli(eng, model.p)) continue;
                if (size >= model.size_cap) {
                    censored = true;
                    return;
                }
                const int child = size++;
                pending.push_back(child);
                if (build_graph) edges.emplace_back(v, child);
            }
        }
    }
};

} // namespace

void PercolationModel::validate() const {
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("PercolationModel: p outside [0,1]");
    if (size_cap < 1) throw std::invalid_argument("PercolationModel: size_cap must be >= 1");
    if (family == Family::homogeneous_tree && delta < 3)
        throw std::invalid_argument("PercolationModel: tree requires delta >= 3");
    if (family == Family::square_lattice_2d && delta != 4)
        throw std::invalid_argument("PercolationModel: square lattice has delta = 4");
}

PercolationModel PercolationModel::square_lattice(double p, int size_cap, std::uint64_t seed) {
    PercolationModel m{Family::square_lattice_2d, 4, p, size_cap, seed};
    m.validate();
    return m;
}

PercolationModel PercolationModel::tree(int delta, double p, int size_cap, std::uint64_t seed) {
    PercolationModel m{Family::homogeneous_tree, delta, p, size_cap, seed};
    m.validate();
    return m;
}

double PercolationModel::critical_p(Family family, int delta) {
    return family == Family::square_lattice_2d ? 0.5 : 1.0 / (delta - 1);
}

ClusterSample sample_cluster(const PercolationModel& model, std::uint64_t stream_index) {
    model.validate();
    if (model.family == Family::square_lattice_2d) {
        LatticeExplorer explorer(model, stream_index);
        explorer.run(true);
        ClusterSample sample;
        sample.size = static_cast<int>(explorer.coords.size());
        sample.graph = FiniteGraph(sample.size, std::move(explorer.edges));
        sample.root = 0;
        sample.censored = explorer.censored;
        sample.coordinates = std::move(explorer.coords);
        return sample;
    }
    TreeExplorer explorer(model, stream_index);
    explorer.run(true);
    ClusterSample sample;
    sample.size = explorer.size;
    sample.graph = FiniteGraph(sample.size, std::move(explorer.edges));
    sample.root = 0;
    sample.censored = explorer.censored;
    return sample;
}

ClusterSize sample_cluster_size(const PercolationModel& model, std::uint64_t stream_index) {
    model.validate();
    if (model.family == Family::square_lattice_2d) {
        LatticeExplorer explorer(model, stream_index);
        explorer.run(false);
        return ClusterSize{static_cast<int>(explorer.coords.size()), explorer.censored};
    }
    TreeExplorer explorer(model, stream_index);
    explorer.run(false);
    return ClusterSize{explorer.size, explorer.censored};
}

TailEstimate tail_survey(const PercolationModel& model, std::int64_t n_samples,
                         std::vector<long> m_grid, long fit_m_lo, long fit_m_hi,
                         int workers) {
    model.validate();
    if (n_samples < 1) throw std::invalid_argument("tail_survey: need n_samples >= 1");
    if (m_grid.empty()) throw std::invalid_argument("tail_survey: empty m grid");
    std::sort(m_grid.begin(), m_grid.end());
    if (fit_m_lo < m_grid.front() || fit_m_hi > m_grid.back() || fit_m_lo >= fit_m_hi)
        throw std::invalid_argument("tail_survey: fit window outside m grid");

    std::vector<int> sizes(n_samples);
    std::vector<char> censored(n_samples);
    parallel_for(n_samples, workers, [&](std::int64_t i) {
        const ClusterSize s = sample_cluster_size(model, static_cast<std::uint64_t>(i));
        sizes[i] = s.size;
        censored[i] = s.censored ? 1 : 0;
    });

    TailEstimate est;
    est.m_grid = m_grid;
    est.n_samples = n_samples;
    std::int64_t n_censored = 0;
    for (std::int64_t i = 0; i < n_samples; ++i) n_censored += censored[i];
    est.censored_fraction = double(n_censored) / n_samples;

    // Counting sort of sizes gives all survival counts in one pass.
    std::vector<std::int64_t> size_count(model.size_cap + 1, 0);
    for (std::int64_t i = 0; i < n_samples; ++i)
        size_count[censored[i] ? model.size_cap : sizes[i]] += 1;
    std::vector<std::int64_t> survival(model.size_cap + 2, 0);
    for (long s = model.size_cap; s >= 1; --s) survival[s] = survival[s + 1] + size_count[s];

    est.phi_hat.reserve(m_grid.size());
    for (long m : m_grid) {
        if (m < 1 || m > model.size_cap)
            throw std::invalid_argument("tail_survey: m grid entry outside [1, size_cap]");
        const double phi = double(survival[m]) / n_samples;
        const double se = std::sqrt(std::max(phi * (1.0 - phi), 0.0) / n_samples);
        est.phi_hat.push_back(phi);
        est.ci_low.push_back(std::max(0.0, phi - 1.96 * se));
        est.ci_high.push_back(std::min(1.0, phi + 1.96 * se));
    }

    std::vector<double> xs, ys, sigmas;
    for (std::size_t i = 0; i < m_grid.size(); ++i) {
        if (m_grid[i] < fit_m_lo || m_grid[i] > fit_m_hi) continue;
        if (est.phi_hat[i] <= 0.0) continue;
        const double se = (est.ci_high[i] - est.phi_hat[i]) / 1.96;
        xs.push_back(double(m_grid[i]));
        ys.push_back(est.phi_hat[i]);
        sigmas.push_back(std::max(se, 1e-12));
    }
    const LogLogFit fit = weighted_loglog_fit(xs, ys, sigmas);
    est.slope = -fit.slope;
    est.slope_stderr = fit.slope_stderr;
    est.r_squared = fit.r_squared;
    return est;
}

void write_tail_csv(std::ostream& out, const TailEstimate& estimate) {
    out << "m,phi_hat,ci_low,ci_high\n";
    for (std::size_t i = 0; i < estimate.m_grid.size(); ++i)
        out << estimate.m_grid[i] << ',' << format_double(estimate.phi_hat[i]) << ','
            << format_double(estimate.ci_low[i]) << ',' << format_double(estimate.ci_high[i])
            << '\n';
}

void write_cluster_text(std::ostream& out, const ClusterSample& sample) {
    write_graph_text(out, sample.graph);
    for (const auto& [x, y] : sample.coordinates) out << x << ' ' << y << '\n';
}

} // namespace drw
