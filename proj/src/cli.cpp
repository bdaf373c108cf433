#include "drw/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "drw/annealed.hpp"
#include "drw/errors.hpp"
#include "drw/experiments.hpp"
#include "drw/ids.hpp"
#include "drw/parallel.hpp"
#include "drw/report.hpp"

namespace drw::cli {

namespace {

namespace fs = std::filesystem;

int resolve_workers(int workers) { return workers > 0 ? workers : default_workers(); }

void write_file(const fs::path& path, const std::string& contents) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << contents;
}

using KeyValues = std::vector<std::pair<std::string, std::string>>;

/// Resolved-config echo, loadable back through --config.
void write_config_echo(const fs::path& dir, const std::string& command, const KeyValues& kv) {
    std::ostringstream text;
    text << "# command: " << command << '\n';
    for (const auto& [key, value] : kv) text << key << '=' << value << '\n';
    write_file(dir / "config_echo.cfg", text.str());
}

fs::path prepare_out_dir(const std::string& out_dir) {
    const fs::path dir = out_dir.empty() ? fs::path(default_out_dir()) : fs::path(out_dir);
    fs::create_directories(dir);
    return dir;
}

std::string u64_str(std::uint64_t v) { return std::to_string(v); }

int finish(const fs::path& dir, const std::vector<BoundReport>& reports) {
    std::ostringstream csv;
    write_reports_csv(csv, reports);
    write_file(dir / "reports.csv", csv.str());
    for (const auto& r : reports) {
        if (!r.satisfied) {
            std::ostringstream line;
            std::vector<BoundReport> failing{r};
            write_reports_csv(line, failing);
            std::cerr << "check failed:\n" << line.str();
        }
    }
    return all_satisfied(reports) ? kExitOk : kExitCheckFailed;
}

} // namespace

std::vector<double> geometric_grid(double t_min, double t_max, int points) {
    if (points < 1 || t_min <= 0.0 || t_max < t_min)
        throw std::invalid_argument("geometric_grid: bad parameters");
    std::vector<double> grid;
    grid.reserve(points);
    if (points == 1) {
        grid.push_back(t_min);
        return grid;
    }
    for (int i = 0; i < points; ++i)
        grid.push_back(t_min * std::pow(t_max / t_min, double(i) / (points - 1)));
    grid.back() = t_max;
    return grid;
}

std::string default_out_dir() {
    const char* env = std::getenv("DRW_OUT_DIR");
    return env && *env ? env : "./out";
}

PercolationModel model_from_preset(const std::string& preset, int delta, double p,
                                   int size_cap, std::uint64_t seed) {
    if (preset == "tree-critical") {
        const double pc = PercolationModel::critical_p(Family::homogeneous_tree, delta);
        return PercolationModel::tree(delta, p < 0.0 ? pc : p, size_cap, seed);
    }
    if (preset == "z2-critical")
        return PercolationModel::square_lattice(p < 0.0 ? 0.5 : p, size_cap, seed);
    if (preset == "z2-subcritical") {
        const double chosen = p < 0.0 ? 0.3 : p;
        if (chosen >= 0.5)
            throw std::invalid_argument("z2-subcritical preset needs p < 1/2");
        return PercolationModel::square_lattice(chosen, size_cap, seed);
    }
    throw std::invalid_argument("unknown preset: " + preset);
}

int run_verify_finite(const VerifyFiniteConfig& config) {
    if (config.n_graphs < 1 || config.n_max < 2)
        throw std::invalid_argument("verify-finite: need n_graphs >= 1 and n_max >= 2");
    const fs::path dir = prepare_out_dir(config.out_dir);
    const int workers = resolve_workers(config.workers);
    write_config_echo(dir, "verify-finite",
                      {{"seed", u64_str(config.seed)},
                       {"n-graphs", std::to_string(config.n_graphs)},
                       {"n-max", std::to_string(config.n_max)},
                       {"sabotage", config.sabotage ? "true" : "false"},
                       {"workers", std::to_string(config.workers)},
                       {"out", dir.string()}});

    SmallGraphSuiteOptions small;
    small.seed = config.seed;
    small.n_graphs = config.n_graphs;
    small.n_max = config.n_max;
    small.sabotage = config.sabotage;
    small.workers = workers;

    std::vector<BoundReport> reports = thm1_sweep(small);
    auto append = [&reports](std::vector<BoundReport> more) {
        for (auto& r : more) reports.push_back(std::move(r));
    };
    append(lemma32_sweep());
    append(lemma33_factorization_suite(config.seed + 1, 100, workers));
    append(eq7_suite(config.seed + 2, 100, workers));
    append(cheeger_chain_suite(config.seed + 3, 500, std::min(config.n_max + 2, 14), workers));
    append(heavy_tail_oracle_suite());
    return finish(dir, reports);
}

int run_annealed(const AnnealedConfig& config) {
    const fs::path dir = prepare_out_dir(config.out_dir);
    const int workers = resolve_workers(config.workers);
    const PercolationModel model =
        model_from_preset(config.preset, config.delta, config.p, config.size_cap, config.seed);
    if (config.n_samples < 1) throw std::invalid_argument("annealed: need n_samples >= 1");
    const std::vector<double> t_grid =
        geometric_grid(config.t_min, config.t_max, config.t_points);

    write_config_echo(dir, "annealed",
                      {{"preset", config.preset},
                       {"delta", std::to_string(config.delta)},
                       {"p", format_double(model.p)},
                       {"t-min", format_double(config.t_min)},
                       {"t-max", format_double(config.t_max)},
                       {"t-points", std::to_string(config.t_points)},
                       {"n-samples", std::to_string(config.n_samples)},
                       {"size-cap", std::to_string(config.size_cap)},
                       {"dense-cap", std::to_string(config.dense_cap)},
                       {"probes", std::to_string(config.probes)},
                       {"cheb-degree", std::to_string(config.cheb_degree)},
                       {"alpha", format_double(config.alpha)},
                       {"mass-transport-samples", std::to_string(config.mass_transport_samples)},
                       {"mass-transport-t", format_double(config.mass_transport_t)},
                       {"box-half-width", std::to_string(config.box_half_width)},
                       {"box-realizations", std::to_string(config.box_realizations)},
                       {"seed", u64_str(config.seed)},
                       {"workers", std::to_string(config.workers)},
                       {"out", dir.string()}});

    CampaignOptions opts;
    opts.dense_cap = config.dense_cap;
    opts.probes = config.probes;
    opts.cheb_degree = config.cheb_degree;
    opts.workers = workers;
    const AnnealedEstimate est = annealed_campaign(model, t_grid, config.n_samples, opts);

    std::ostringstream campaign_csv;
    write_campaign_csv(campaign_csv, est);
    write_file(dir / "campaign.csv", campaign_csv.str());

    std::vector<BoundReport> reports;
    std::ostringstream summary;
    summary << "preset=" << config.preset << '\n'
            << "p=" << format_double(model.p) << '\n'
            << "n_samples=" << config.n_samples << '\n'
            << "kappa_hat=" << format_double(est.kappa_hat) << '\n'
            << "kappa_std_error=" << format_double(est.kappa_std_error) << '\n'
            << "chi_hat=" << format_double(est.chi_hat) << '\n'
            << "chi_reliable=" << (est.chi_reliable ? "true" : "false") << '\n'
            << "censored_fraction=" << format_double(est.censored_fraction) << '\n';

    const bool tree = model.family == Family::homogeneous_tree;
    const double alpha = config.alpha > 0.0 ? config.alpha : (tree ? 0.4 : 0.1);
    const double critical =
        PercolationModel::critical_p(model.family, model.delta);

    try {
        const ExponentFit fit = fit_decay_exponent(est);
        summary << "fit_exponent=" << format_double(fit.exponent) << '\n'
                << "fit_stderr=" << format_double(fit.exponent_stderr) << '\n'
                << "fit_r_squared=" << format_double(fit.r_squared) << '\n'
                << "fit_points=" << fit.points << '\n';
        if (std::abs(model.p - critical) < 1e-12)
            reports.push_back(corollary1_exponent_check(fit, model.family, alpha));
    } catch (const InsufficientDataError& e) {
        summary << "fit_exponent=unavailable (" << e.what() << ")\n";
    } catch (const FitUnreliableError& e) {
        summary << "fit_warning=" << e.what() << '\n';
    }

    if (std::abs(model.p - critical) < 1e-12) {
        const double tail_b = tree ? 0.5 : 0.055; // asymptotic survival exponents
        if (alpha < tail_b) {
            const double moment =
                empirical_size_moment(model, config.n_samples, alpha, workers);
            summary << "size_moment_alpha=" << format_double(moment) << '\n';
            reports.push_back(theorem3_upper_check(est, model.delta, alpha, moment, tail_b));
        }
    }

    if (!tree && model.p < 0.5) {
        auto sandwich = kappa_sandwich_check(est, 2, est.chi_hat);
        for (auto& r : sandwich) reports.push_back(std::move(r));
        if (config.box_half_width > 0) {
            const BoxCount box =
                grimmett_kappa_boxcount(model.p, config.box_half_width,
                                        config.box_realizations, config.seed + 17, workers);
            summary << "kappa_box=" << format_double(box.kappa) << '\n'
                    << "kappa_box_std_error=" << format_double(box.std_error) << '\n';
            const double diff = std::abs(box.kappa - est.kappa_hat);
            const double combined = std::sqrt(box.std_error * box.std_error +
                                              est.kappa_std_error * est.kappa_std_error);
            reports.push_back(make_report("kappa_two_estimators",
                                          {{"L", double(config.box_half_width)},
                                           {"p", model.p},
                                           {"box", box.kappa},
                                           {"cluster", est.kappa_hat}},
                                          diff, 3.0 * combined));
        }
    }

    if (config.mass_transport_samples > 0) {
        CampaignOptions mt_opts = opts;
        reports.push_back(mass_transport_check(model, config.mass_transport_t,
                                               config.mass_transport_samples, mt_opts));
    }

    write_file(dir / "summary.txt", summary.str());
    return finish(dir, reports);
}

int run_ids(const IdsConfig& config) {
    const fs::path dir = prepare_out_dir(config.out_dir);
    const int workers = resolve_workers(config.workers);
    write_config_echo(dir, "ids",
                      {{"p", format_double(config.p)},
                       {"L", std::to_string(config.box_half_width)},
                       {"n-realizations", std::to_string(config.n_realizations)},
                       {"dense-cap", std::to_string(config.dense_cap)},
                       {"check-laplace", config.check_laplace ? "true" : "false"},
                       {"laplace-samples", std::to_string(config.laplace_samples)},
                       {"laplace-size-cap", std::to_string(config.laplace_size_cap)},
                       {"window-check", config.window_check ? "true" : "false"},
                       {"alpha", format_double(config.alpha)},
                       {"seed", u64_str(config.seed)},
                       {"workers", std::to_string(config.workers)},
                       {"out", dir.string()}});

    const IdsCurve curve = ids_curve(config.p, config.box_half_width, config.n_realizations,
                                     config.seed, config.dense_cap, workers);

    std::ostringstream curve_csv;
    write_ids_csv(curve_csv, curve);
    std::ostringstream name;
    name << "ids_p" << format_double(config.p) << "_L" << config.box_half_width << ".csv";
    write_file(dir / name.str(), curve_csv.str());

    std::vector<BoundReport> reports;
    int worst_mismatch = 0;
    for (int r = 0; r < curve.n_realizations; ++r)
        worst_mismatch = std::max(
            worst_mismatch, std::abs(curve.zero_multiplicity[r] - curve.component_count[r]));
    reports.push_back(make_report("ids_zero_components",
                                  {{"p", config.p}, {"L", double(config.box_half_width)}},
                                  double(worst_mismatch), 0.0));

    if (config.check_laplace) {
        const PercolationModel model = PercolationModel::square_lattice(
            config.p, config.laplace_size_cap, config.seed + 101);
        CampaignOptions opts;
        opts.compute_root = true;
        opts.workers = workers;
        const AnnealedEstimate est =
            annealed_campaign(model, {1.0, 10.0, 100.0}, config.laplace_samples, opts);
        reports.push_back(laplace_consistency(curve, est));
    }
    if (config.window_check)
        reports.push_back(theorem2_window_check(curve, config.alpha));
    return finish(dir, reports);
}

int run_tail(const TailConfig& config) {
    const fs::path dir = prepare_out_dir(config.out_dir);
    const int workers = resolve_workers(config.workers);
    const PercolationModel model =
        model_from_preset(config.preset, config.delta, config.p, config.size_cap, config.seed);
    write_config_echo(dir, "tail",
                      {{"preset", config.preset},
                       {"delta", std::to_string(config.delta)},
                       {"p", format_double(model.p)},
                       {"n-samples", std::to_string(config.n_samples)},
                       {"size-cap", std::to_string(config.size_cap)},
                       {"m-max", std::to_string(config.m_max)},
                       {"fit-m-lo", std::to_string(config.fit_m_lo)},
                       {"fit-m-hi", std::to_string(config.fit_m_hi)},
                       {"seed", u64_str(config.seed)},
                       {"workers", std::to_string(config.workers)},
                       {"out", dir.string()}});

    std::vector<long> grid;
    for (long m = 1; m <= config.m_max;) {
        grid.push_back(m);
        const long next = static_cast<long>(std::ceil(m * 1.25));
        m = next > m ? next : m + 1;
    }
    if (grid.back() != config.m_max) grid.push_back(config.m_max);

    const TailEstimate est = tail_survey(model, config.n_samples, grid, config.fit_m_lo,
                                         config.fit_m_hi, workers);
    std::ostringstream csv;
    write_tail_csv(csv, est);
    write_file(dir / "tail.csv", csv.str());

    std::ostringstream summary;
    summary << "preset=" << config.preset << '\n'
            << "slope=" << format_double(est.slope) << '\n'
            << "slope_stderr=" << format_double(est.slope_stderr) << '\n'
            << "r_squared=" << format_double(est.r_squared) << '\n'
            << "n_samples=" << est.n_samples << '\n'
            << "censored_fraction=" << format_double(est.censored_fraction) << '\n';
    if (est.r_squared < 0.9)
        summary << "warning=poor power-law fit (exponential tail?)\n";
    write_file(dir / "summary.txt", summary.str());
    return kExitOk;
}

int run_kappa_box(const KappaBoxConfig& config) {
    const fs::path dir = prepare_out_dir(config.out_dir);
    const int workers = resolve_workers(config.workers);
    write_config_echo(dir, "kappa-box",
                      {{"p", format_double(config.p)},
                       {"L", std::to_string(config.box_half_width)},
                       {"n-realizations", std::to_string(config.n_realizations)},
                       {"n-samples", std::to_string(config.n_samples)},
                       {"size-cap", std::to_string(config.size_cap)},
                       {"seed", u64_str(config.seed)},
                       {"workers", std::to_string(config.workers)},
                       {"out", dir.string()}});

    const BoxCount box = grimmett_kappa_boxcount(config.p, config.box_half_width,
                                                 config.n_realizations, config.seed, workers);

    const PercolationModel model =
        PercolationModel::square_lattice(config.p, config.size_cap, config.seed + 1);
    std::vector<double> inverse_sizes(config.n_samples);
    parallel_for(config.n_samples, workers, [&](std::int64_t i) {
        const ClusterSize s = sample_cluster_size(model, static_cast<std::uint64_t>(i));
        inverse_sizes[i] = s.censored ? 0.0 : 1.0 / s.size;
    });
    double mean = 0.0;
    for (double v : inverse_sizes) mean += v;
    mean /= config.n_samples;
    double var = 0.0;
    for (double v : inverse_sizes) var += (v - mean) * (v - mean);
    const double se = std::sqrt(var / (config.n_samples - 1.0) / config.n_samples);

    std::ostringstream summary;
    summary << "kappa_box=" << format_double(box.kappa) << '\n'
            << "kappa_box_std_error=" << format_double(box.std_error) << '\n'
            << "kappa_cluster=" << format_double(mean) << '\n'
            << "kappa_cluster_std_error=" << format_double(se) << '\n';
    write_file(dir / "summary.txt", summary.str());

    const double diff = std::abs(box.kappa - mean);
    const double combined = std::sqrt(box.std_error * box.std_error + se * se);
    std::vector<BoundReport> reports{make_report(
        "kappa_two_estimators",
        {{"L", double(config.box_half_width)}, {"p", config.p}, {"box", box.kappa},
         {"cluster", mean}},
        diff, 3.0 * combined)};
    return finish(dir, reports);
}

int run_dump_graph(const DumpGraphConfig& config) {
    std::ostringstream text;
    if (config.family == "cycle") {
        write_graph_text(text, cycle_graph(config.cycle_m));
    } else {
        PercolationModel model;
        if (config.family == "tree") {
            const double pc = PercolationModel::critical_p(Family::homogeneous_tree, config.delta);
            model = PercolationModel::tree(config.delta, config.p < 0.0 ? pc : config.p,
                                           config.size_cap, config.seed);
        } else if (config.family == "z2") {
            model = PercolationModel::square_lattice(config.p < 0.0 ? 0.5 : config.p,
                                                     config.size_cap, config.seed);
        } else {
            throw std::invalid_argument("dump-graph: unknown family " + config.family);
        }
        const ClusterSample sample = sample_cluster(model, config.stream_index);
        write_cluster_text(text, sample);
    }
    if (config.out_file.empty()) {
        std::cout << text.str();
    } else {
        write_file(config.out_file, text.str());
    }
    return kExitOk;
}

} // namespace drw::cli
