#include "drw/bounds.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "drw/errors.hpp"

namespace drw {

namespace {

void check_thm1_args(int n, int delta, double beta2, int k, double t) {
    if (n < 3) throw std::invalid_argument("thm1 bound: need N >= 3");
    if (delta < 1) throw std::invalid_argument("thm1 bound: need delta >= 1");
    if (k < 1 || k > n - 2) throw std::invalid_argument("thm1 bound: k out of {1..N-2}");
    if (t <= 0.0) throw std::invalid_argument("thm1 bound: need t > 0");
    if (beta2 < -1.0 || beta2 >= 1.0)
        throw std::invalid_argument("thm1 bound: beta2 out of [-1,1)");
}

double thm1_exponential(int n, int delta, int k, double t) {
    return std::exp(-32.0 * t * k * k / ((delta + 2.0) * delta * delta * double(n) * n));
}

void check_it_args(int k, int n, double t) {
    if (n <= 3) throw std::invalid_argument("I_t: need N > 3");
    if (k < 1 || k > n - 2) throw std::invalid_argument("I_t: k out of {1..N-2}");
    if (t <= 0.0) throw std::invalid_argument("I_t: need t > 0");
}

} // namespace

double thm1_upper_i(int n, int delta, double beta2, int k, double t) {
    check_thm1_args(n, delta, beta2, k, t);
    const double second = delta * (double(k) / n) * std::exp(-t * (1.0 - beta2));
    const double third = std::sqrt(std::numbers::pi / 32.0) * delta *
                         std::sqrt(delta + 2.0) / std::sqrt(t) *
                         thm1_exponential(n, delta, k, t);
    return 1.0 / n + second + third;
}

double thm1_upper_ii(int n, int delta, double beta2, int k, double t) {
    check_thm1_args(n, delta, beta2, k, t);
    const double second = delta * (double(k) / n) * std::exp(-t * (1.0 - beta2));
    const double third = delta * delta * (delta + 2.0) / (16.0 * t) * (double(n) / k) *
                         thm1_exponential(n, delta, k, t);
    return 1.0 / n + second + third;
}

double thm1_lower_planar(int n, int delta, double t) {
    if (n <= 288)
        throw std::invalid_argument("thm1_lower_planar: requires N > 288");
    if (t < 0.0) throw std::invalid_argument("thm1_lower_planar: negative time");
    const double k_const = 12.0 * std::numbers::sqrt2 * delta;
    return 1.0 / n + std::exp(-t * k_const / std::sqrt(double(n))) / n;
}

double it_exact(int k, int n, double t) {
    check_it_args(k, n, t);
    double sum = 0.0;
    for (int j = k + 1; j <= n - 1; ++j)
        sum += std::exp(-t * (1.0 - std::cos(std::numbers::pi * j / n)));
    return sum;
}

double it_bound_i(int k, int n, double t) {
    check_it_args(k, n, t);
    return 0.5 * std::sqrt(std::numbers::pi / 2.0) * n / std::sqrt(t) *
           std::exp(-2.0 * t * k * k / (double(n) * n));
}

double it_bound_ii(int k, int n, double t) {
    check_it_args(k, n, t);
    return 0.5 * double(n) * n / (k * t) * std::exp(-2.0 * t * k * k / (double(n) * n));
}

void validate_tail_params(const TailParams& params) {
    if (params.big_a <= 0.0 || params.big_b <= 0.0 || params.a <= 0.0)
        throw std::invalid_argument("TailParams: A, B, a must be positive");
    if (params.b <= 0.0 || params.b >= 1.0)
        throw std::invalid_argument("TailParams: need 0 < b < 1");
    // With a == b the assumption is non-vacuous at m = 1 only if A <= B.
    if (params.a == params.b && params.big_a > params.big_b)
        throw std::invalid_argument("TailParams: A <= B required when a == b");
}

double heavy_tail_constant(const TailParams& params) {
    validate_tail_params(params);
    return std::pow(params.big_a / 2.0, 1.0 + 1.0 / params.b) /
           std::pow(params.big_b, 1.0 / params.b);
}

double heavy_tail_lower(const TailParams& params, long m) {
    if (m < 1) throw std::invalid_argument("heavy_tail_lower: need m >= 1");
    const double c = heavy_tail_constant(params);
    return c / std::pow(double(m), params.a * (1.0 + 1.0 / params.b));
}

std::vector<BoundReport> eq7_cycle_comparison(const FiniteGraph& g, int delta, int dense_cap) {
    if (!is_connected(g)) throw std::invalid_argument("eq7_cycle_comparison: graph disconnected");
    if (delta < 3) throw std::invalid_argument("eq7_cycle_comparison: need delta >= 3");
    if (delta < g.max_degree())
        throw std::invalid_argument("eq7_cycle_comparison: delta below max degree");
    const int n = g.vertex_count();
    const long m = static_cast<long>(delta) * n;
    if (m > dense_cap)
        throw SizeExceededError("eq7_cycle_comparison: product size " + std::to_string(m) +
                                " exceeds dense cap");

    const FiniteGraph cycle = cycle_graph(delta);
    const FiniteGraph product = cartesian_product(g, cycle);
    const DrwKernel hat_kernel(product, delta + 2);
    const Spectrum hat = exact_spectrum(hat_kernel, dense_cap);
    const Spectrum base = exact_spectrum(DrwKernel(g, delta), dense_cap);

    std::vector<BoundReport> reports;
    reports.reserve(m + 2);

    // Sorted-multiset comparison with the spanning cycle C_{delta N}: the
    // j-th largest cycle value pairs the cosine at floor(j/2) because each
    // nonzero cycle eigenvalue appears twice.
    for (long j = 1; j <= m; ++j) {
        const long idx = j / 2;
        const double bound =
            1.0 - 2.0 / (delta + 2.0) *
                      (1.0 - std::cos(2.0 * std::numbers::pi * idx / double(m)));
        reports.push_back(make_report(
            "eq7_compare", {{"N", double(n)}, {"delta", double(delta)}, {"j", double(j)}},
            hat.betas[j - 1], bound));
    }

    // The delay-(delta+2) kernel on g x C_delta has eigenvalues
    // (delta beta_j + 2 cos(2 pi l / delta)) / (delta + 2): Kronecker sum of
    // the two Laplacians under one normalization.
    std::vector<double> expected;
    expected.reserve(m);
    for (int j = 0; j < n; ++j)
        for (int l = 0; l < delta; ++l)
            expected.push_back((delta * base.betas[j] +
                                2.0 * std::cos(2.0 * std::numbers::pi * l / delta)) /
                               (delta + 2.0));
    std::sort(expected.begin(), expected.end(), std::greater<double>());
    double worst = 0.0;
    for (long j = 0; j < m; ++j) worst = std::max(worst, std::abs(expected[j] - hat.betas[j]));
    reports.push_back(make_report("eq7_kernel_spectrum",
                                  {{"N", double(n)}, {"delta", double(delta)}}, worst, 1e-9));

    // Equal-weight product kernel (P_g ox I + I ox P_C)/2 with the cycle
    // taken at delay 2: its spectrum is exactly (beta_j + cos(2 pi l/delta))/2.
    const Spectrum cycle_half = exact_spectrum(DrwKernel(cycle, 2), dense_cap);
    const Matrix mixed = product_kernel_matrix(DrwKernel(g, delta), DrwKernel(cycle, 2));
    Eigen::SelfAdjointEigenSolver<Matrix> mixed_solver(mixed, Eigen::EigenvaluesOnly);
    const Vector mixed_eigs = mixed_solver.eigenvalues().reverse();
    const Spectrum closed = product_spectrum(base, cycle_half);
    double worst_mixed = 0.0;
    for (long j = 0; j < m; ++j)
        worst_mixed = std::max(worst_mixed, std::abs(mixed_eigs[j] - closed.betas[j]));
    reports.push_back(make_report("eq7_product_form",
                                  {{"N", double(n)}, {"delta", double(delta)}}, worst_mixed,
                                  1e-9));
    return reports;
}

double cheeger_constant(const FiniteGraph& g, int brute_force_cap) {
    if (!is_connected(g)) throw std::invalid_argument("cheeger_constant: graph disconnected");
    const int n = g.vertex_count();
    if (n < 2) throw std::invalid_argument("cheeger_constant: need n >= 2");
    if (n > brute_force_cap)
        throw SizeExceededError("cheeger_constant: " + std::to_string(n) +
                                " vertices exceeds brute-force cap " +
                                std::to_string(brute_force_cap));
    const auto& edges = g.edges();
    double best = std::numeric_limits<double>::infinity();
    const std::uint32_t full = 1u << n;
    for (std::uint32_t mask = 1; mask < full; ++mask) {
        const int size = std::popcount(mask);
        if (2 * size > n) continue;
        long boundary = 0;
        for (const auto& [u, v] : edges)
            boundary += ((mask >> u) ^ (mask >> v)) & 1u;
        best = std::min(best, double(boundary) / size);
    }
    return best;
}

BoshierBound boshier_bound(int n, int delta) {
    if (n < 1 || delta < 1) throw std::invalid_argument("boshier_bound: bad arguments");
    return BoshierBound{12.0 * std::numbers::sqrt2 * delta / std::sqrt(double(n)), n >= 289};
}

} // namespace drw
