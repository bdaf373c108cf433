// Command-line front end: experiment configuration, campaign execution,
// bound-verification suites, CSV emission.
//
// Exit codes: 0 all checks passed, 1 check failure, 2 usage/config error,
// 3 resource cap exceeded.

#include <CLI11.hpp>

#include <exception>
#include <iostream>

#include "drw/cli.hpp"
#include "drw/errors.hpp"

namespace {

void add_common(CLI::App* cmd, std::uint64_t& seed, int& workers, std::string& out_dir) {
    cmd->add_option("--seed", seed, "master RNG seed");
    cmd->add_option("--workers", workers, "worker threads (0: hardware)");
    cmd->add_option("--out", out_dir, "output directory (default $DRW_OUT_DIR or ./out)");
    cmd->set_config("--config", "", "flat key=value config file; flags win");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"delayed random walks on percolation clusters"};
    app.require_subcommand(1);

    drw::cli::VerifyFiniteConfig verify;
    auto* verify_cmd =
        app.add_subcommand("verify-finite", "exact finite-graph bound suites");
    verify_cmd->add_option("--n-graphs", verify.n_graphs, "random graphs in the sweep");
    verify_cmd->add_option("--n-max", verify.n_max, "largest graph size");
    verify_cmd->add_flag("--sabotage", verify.sabotage,
                         "flip a sign in the first upper bound (suite sensitivity self-test)");
    add_common(verify_cmd, verify.seed, verify.workers, verify.out_dir);

    drw::cli::AnnealedConfig annealed;
    auto* annealed_cmd = app.add_subcommand("annealed", "annealed return-probability campaign");
    annealed_cmd->add_option("--preset", annealed.preset,
                             "tree-critical | z2-critical | z2-subcritical");
    annealed_cmd->add_option("--delta", annealed.delta, "tree degree");
    annealed_cmd->add_option("--p", annealed.p, "retention probability (preset default if unset)");
    annealed_cmd->add_option("--t-min", annealed.t_min, "first grid time");
    annealed_cmd->add_option("--t-max", annealed.t_max, "last grid time");
    annealed_cmd->add_option("--t-points", annealed.t_points, "geometric grid size");
    annealed_cmd->add_option("--n-samples", annealed.n_samples, "Monte-Carlo samples");
    annealed_cmd->add_option("--size-cap", annealed.size_cap, "cluster exploration cap");
    annealed_cmd->add_option("--dense-cap", annealed.dense_cap, "dense eigensolver cap");
    annealed_cmd->add_option("--probes", annealed.probes, "Hutchinson probes above the cap");
    annealed_cmd->add_option("--cheb-degree", annealed.cheb_degree,
                             "Chebyshev degree (0: from t-max)");
    annealed_cmd->add_option("--alpha", annealed.alpha, "moment exponent for the upper check");
    annealed_cmd->add_option("--mass-transport-samples", annealed.mass_transport_samples,
                             "samples for the mass-transport check (0: skip)");
    annealed_cmd->add_option("--mass-transport-t", annealed.mass_transport_t,
                             "time for the mass-transport check");
    annealed_cmd->add_option("--box-L", annealed.box_half_width,
                             "compare kappa against the box count at this half-width");
    annealed_cmd->add_option("--box-realizations", annealed.box_realizations,
                             "box-count realizations");
    add_common(annealed_cmd, annealed.seed, annealed.workers, annealed.out_dir);

    drw::cli::IdsConfig ids;
    auto* ids_cmd = app.add_subcommand("ids", "integrated density of states on lattice boxes");
    ids_cmd->add_option("--p", ids.p, "retention probability");
    ids_cmd->add_option("--L", ids.box_half_width, "box half-width (side 2L)");
    ids_cmd->add_option("--n-realizations", ids.n_realizations, "box realizations");
    ids_cmd->add_option("--dense-cap", ids.dense_cap, "per-component dense cap");
    ids_cmd->add_flag("--check-laplace", ids.check_laplace,
                      "compare the Laplace transform with a fixed-root campaign");
    ids_cmd->add_option("--laplace-samples", ids.laplace_samples,
                        "samples for the fixed-root campaign");
    ids_cmd->add_flag("--window-check", ids.window_check,
                      "small-energy slope bracket (critical p only)");
    ids_cmd->add_option("--alpha", ids.alpha, "exponent for the window bracket");
    add_common(ids_cmd, ids.seed, ids.workers, ids.out_dir);

    drw::cli::TailConfig tail;
    auto* tail_cmd = app.add_subcommand("tail", "cluster-size survival survey");
    tail_cmd->add_option("--preset", tail.preset,
                         "tree-critical | z2-critical | z2-subcritical");
    tail_cmd->add_option("--delta", tail.delta, "tree degree");
    tail_cmd->add_option("--p", tail.p, "retention probability (preset default if unset)");
    tail_cmd->add_option("--n-samples", tail.n_samples, "Monte-Carlo samples");
    tail_cmd->add_option("--size-cap", tail.size_cap, "cluster exploration cap");
    tail_cmd->add_option("--m-max", tail.m_max, "largest survival threshold");
    tail_cmd->add_option("--fit-m-lo", tail.fit_m_lo, "slope window lower edge");
    tail_cmd->add_option("--fit-m-hi", tail.fit_m_hi, "slope window upper edge");
    add_common(tail_cmd, tail.seed, tail.workers, tail.out_dir);

    drw::cli::KappaBoxConfig kappa;
    auto* kappa_cmd = app.add_subcommand("kappa-box", "components per site on a box");
    kappa_cmd->add_option("--p", kappa.p, "retention probability");
    kappa_cmd->add_option("--L", kappa.box_half_width, "box half-width");
    kappa_cmd->add_option("--n-realizations", kappa.n_realizations, "box realizations");
    kappa_cmd->add_option("--n-samples", kappa.n_samples, "cluster samples for comparison");
    kappa_cmd->add_option("--size-cap", kappa.size_cap, "cluster exploration cap");
    add_common(kappa_cmd, kappa.seed, kappa.workers, kappa.out_dir);

    drw::cli::DumpGraphConfig dump;
    std::string dump_out;
    auto* dump_cmd = app.add_subcommand("dump-graph", "sample and dump one graph as text");
    dump_cmd->add_option("--family", dump.family, "tree | z2 | cycle");
    dump_cmd->add_option("--delta", dump.delta, "tree degree");
    dump_cmd->add_option("--p", dump.p, "retention probability (critical if unset)");
    dump_cmd->add_option("--size-cap", dump.size_cap, "cluster exploration cap");
    dump_cmd->add_option("--cycle-m", dump.cycle_m, "cycle length for family=cycle");
    dump_cmd->add_option("--seed", dump.seed, "master RNG seed");
    dump_cmd->add_option("--stream-index", dump.stream_index, "sample stream index");
    dump_cmd->add_option("--dump-graph", dump_out, "output file (default stdout)");
    dump_cmd->add_option("--out", dump_out, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? drw::cli::kExitOk : drw::cli::kExitUsage;
    }

    try {
        if (verify_cmd->parsed()) return drw::cli::run_verify_finite(verify);
        if (annealed_cmd->parsed()) return drw::cli::run_annealed(annealed);
        if (ids_cmd->parsed()) return drw::cli::run_ids(ids);
        if (tail_cmd->parsed()) return drw::cli::run_tail(tail);
        if (kappa_cmd->parsed()) return drw::cli::run_kappa_box(kappa);
        if (dump_cmd->parsed()) {
            dump.out_file = dump_out;
            return drw::cli::run_dump_graph(dump);
        }
    } catch (const drw::SizeExceededError& e) {
        std::cerr << "resource cap exceeded: " << e.what() << '\n';
        return drw::cli::kExitCapExceeded;
    } catch (const std::invalid_argument& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return drw::cli::kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return drw::cli::kExitCheckFailed;
    }
    return drw::cli::kExitUsage;
}
