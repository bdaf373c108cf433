#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "drw/percolation.hpp"
#include "drw/spectral.hpp"

namespace drw::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitCapExceeded = 3;

/// Geometric time grid with `points` entries from t_min to t_max inclusive.
std::vector<double> geometric_grid(double t_min, double t_max, int points);

/// $DRW_OUT_DIR when set, else "./out".
std::string default_out_dir();

/// Resolves one of the named presets (tree-critical, z2-critical,
/// z2-subcritical) into a model; p < 0 selects the preset default.
PercolationModel model_from_preset(const std::string& preset, int delta, double p,
                                   int size_cap, std::uint64_t seed);

struct VerifyFiniteConfig {
    std::uint64_t seed = 1;
    int n_graphs = 200;
    int n_max = 12;
    bool sabotage = false;
    int workers = 0; // 0: hardware concurrency
    std::string out_dir;
};
int run_verify_finite(const VerifyFiniteConfig& config);

struct AnnealedConfig {
    std::string preset = "tree-critical";
    int delta = 3;
    double p = -1.0;
    double t_min = 10.0;
    double t_max = 1000.0;
    int t_points = 9;
    std::int64_t n_samples = 20000;
    int size_cap = 20000;
    int dense_cap = 1000;
    int probes = 16;
    int cheb_degree = 0;
    double alpha = -1.0; // <0: family default (0.4 tree, 0.1 lattice)
    std::int64_t mass_transport_samples = 0;
    double mass_transport_t = 5.0;
    int box_half_width = 0; // >0: compare kappa against the box count (lattice)
    int box_realizations = 10;
    std::uint64_t seed = 1;
    int workers = 0;
    std::string out_dir;
};
int run_annealed(const AnnealedConfig& config);

struct IdsConfig {
    double p = 0.3;
    int box_half_width = 64;
    int n_realizations = 50;
    int dense_cap = kDefaultDenseCap;
    bool check_laplace = false;
    std::int64_t laplace_samples = 50000;
    int laplace_size_cap = 20000;
    bool window_check = false;
    double alpha = 0.1;
    std::uint64_t seed = 1;
    int workers = 0;
    std::string out_dir;
};
int run_ids(const IdsConfig& config);

struct TailConfig {
    std::string preset = "tree-critical";
    int delta = 3;
    double p = -1.0;
    std::int64_t n_samples = 1000000;
    int size_cap = 100000;
    long m_max = 10000;
    long fit_m_lo = 10;
    long fit_m_hi = 1000;
    std::uint64_t seed = 1;
    int workers = 0;
    std::string out_dir;
};
int run_tail(const TailConfig& config);

struct KappaBoxConfig {
    double p = 0.3;
    int box_half_width = 512;
    int n_realizations = 10;
    std::int64_t n_samples = 100000;
    int size_cap = 20000;
    std::uint64_t seed = 1;
    int workers = 0;
    std::string out_dir;
};
int run_kappa_box(const KappaBoxConfig& config);

struct DumpGraphConfig {
    std::string family = "tree"; // tree | z2 | cycle
    int delta = 3;
    double p = -1.0;
    int size_cap = 20000;
    int cycle_m = 6;
    std::uint64_t seed = 1;
    std::uint64_t stream_index = 0;
    std::string out_file; // empty: stdout
};
int run_dump_graph(const DumpGraphConfig& config);

} // namespace drw::cli
