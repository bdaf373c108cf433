#include "drw/heat_trace.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "drw/parallel.hpp"
#include "drw/rng.hpp"

namespace drw {

namespace {

constexpr double kBesselPathMaxT = 600.0; // I_0(t) overflows near t ~ 710
constexpr double kCoeffFloor = 1e-18;     // coefficients below this are noise
constexpr int kTailProbe = 256;           // extra coefficients used for the truncation bound

Vector heat_coeffs(double t, int count) {
    return t <= kBesselPathMaxT ? chebyshev_heat_coeffs_bessel(t, count)
                                : chebyshev_heat_coeffs_cosine(t, count);
}

} // namespace

Vector chebyshev_heat_coeffs_bessel(double t, int count) {
    if (t < 0.0) throw std::invalid_argument("chebyshev_heat_coeffs_bessel: negative time");
    Vector c(count);
    const double damp = std::exp(-t);
    for (int k = 0; k < count; ++k) {
        const double ik = std::cyl_bessel_i(static_cast<double>(k), t);
        c[k] = (k == 0 ? 1.0 : 2.0) * damp * ik;
        if (!std::isfinite(c[k])) c[k] = 0.0; // underflow of I_k for k >> t
    }
    return c;
}

Vector chebyshev_heat_coeffs_cosine(double t, int count) {
    if (t < 0.0) throw std::invalid_argument("chebyshev_heat_coeffs_cosine: negative time");
    const int m = std::max(2 * count, 128);
    std::vector<double> samples(m);
    std::vector<double> angles(m);
    for (int i = 0; i < m; ++i) {
        angles[i] = std::numbers::pi * (i + 0.5) / m;
        samples[i] = std::exp(-t * (1.0 - std::cos(angles[i])));
    }
    Vector c(count);
    for (int k = 0; k < count; ++k) {
        double acc = 0.0;
        for (int i = 0; i < m; ++i) acc += samples[i] * std::cos(k * angles[i]);
        c[k] = (k == 0 ? 1.0 : 2.0) * acc / m;
    }
    return c;
}

ChebyshevHeatSeries chebyshev_heat_series(double t, int degree) {
    if (degree < 0) throw std::invalid_argument("chebyshev_heat_series: negative degree");
    const int extended = degree + 1 + kTailProbe;
    Vector full = heat_coeffs(t, extended);
    ChebyshevHeatSeries series;
    series.t = t;
    series.coeffs = full.head(degree + 1);
    double tail = 0.0;
    for (int k = degree + 1; k < extended; ++k) tail += std::abs(full[k]);
    // The dropped coefficients decay super-geometrically; once the probed
    // tail has fallen below the floor the remainder is negligible.
    if (std::abs(full[extended - 1]) > kCoeffFloor) tail += std::abs(full[extended - 1]) * kTailProbe;
    series.truncation = tail;
    return series;
}

int default_cheb_degree(double t) {
    return std::max(30, static_cast<int>(std::ceil(2.0 * t)) + 20);
}

Vector chebyshev_vector_moments(const DrwKernel& kernel, const Vector& z, int degree) {
    Vector mu(degree + 1);
    mu[0] = z.dot(z);
    if (degree == 0) return mu;
    Vector prev = z;
    Vector cur = kernel.apply(z);
    mu[1] = z.dot(cur);
    Vector next(z.size());
    for (int k = 2; k <= degree; ++k) {
        kernel.apply(cur, next);
        next = 2.0 * next - prev;
        mu[k] = z.dot(next);
        prev.swap(cur);
        cur.swap(next);
    }
    return mu;
}

double chebyshev_diag_entry(const DrwKernel& kernel, int v, const ChebyshevHeatSeries& series) {
    Vector z = Vector::Zero(kernel.size());
    z[v] = 1.0;
    const Vector mu = chebyshev_vector_moments(kernel, z, series.degree());
    return series.coeffs.dot(mu);
}

std::vector<double> chebyshev_diag_entry_multi(const DrwKernel& kernel, int v,
                                               const std::vector<ChebyshevHeatSeries>& series) {
    int degree = 0;
    for (const auto& s : series) degree = std::max(degree, s.degree());
    Vector z = Vector::Zero(kernel.size());
    z[v] = 1.0;
    const Vector mu = chebyshev_vector_moments(kernel, z, degree);
    std::vector<double> out;
    out.reserve(series.size());
    for (const auto& s : series) out.push_back(s.coeffs.dot(mu.head(s.coeffs.size())));
    return out;
}

std::vector<TraceEstimate> stochastic_heat_trace_series(
    const DrwKernel& kernel, const std::vector<ChebyshevHeatSeries>& series, int probes,
    std::uint64_t seed, int workers) {
    if (probes < 1) throw std::invalid_argument("stochastic_heat_trace: probes must be >= 1");
    const int n = kernel.size();
    int degree = 0;
    for (const auto& s : series) degree = std::max(degree, s.degree());

    // Per-probe quadratic forms, slot per probe: worker count cannot change
    // the reduction order below.
    Matrix q(probes, series.size());
    parallel_for(probes, workers, [&](std::int64_t p) {
        RngEngine eng = make_engine(seed, static_cast<std::uint64_t>(p));
        Vector z(n);
        for (int i = 0; i < n; ++i) z[i] = rademacher(eng);
        const Vector mu = chebyshev_vector_moments(kernel, z, degree);
        for (std::size_t s = 0; s < series.size(); ++s)
            q(p, s) = series[s].coeffs.dot(mu.head(series[s].coeffs.size())) / n;
    });

    std::vector<TraceEstimate> out(series.size());
    for (std::size_t s = 0; s < series.size(); ++s) {
        double mean = 0.0;
        for (int p = 0; p < probes; ++p) mean += q(p, s);
        mean /= probes;
        double var = 0.0;
        for (int p = 0; p < probes; ++p) var += (q(p, s) - mean) * (q(p, s) - mean);
        const double std_error = probes > 1 ? std::sqrt(var / (probes - 1.0) / probes) : 0.0;
        out[s] = TraceEstimate{mean,           std_error, TraceEstimate::Method::stochastic,
                               probes,         series[s].degree(),
                               series[s].truncation};
    }
    return out;
}

std::vector<TraceEstimate> stochastic_heat_trace_multi(const DrwKernel& kernel,
                                                       const std::vector<double>& times,
                                                       int probes, int cheb_degree,
                                                       std::uint64_t seed, int workers) {
    if (cheb_degree < 0) throw std::invalid_argument("stochastic_heat_trace: negative degree");
    std::vector<ChebyshevHeatSeries> series;
    series.reserve(times.size());
    for (double t : times) series.push_back(chebyshev_heat_series(t, cheb_degree));
    return stochastic_heat_trace_series(kernel, series, probes, seed, workers);
}

TraceEstimate stochastic_heat_trace(const DrwKernel& kernel, double t, int probes,
                                    int cheb_degree, std::uint64_t seed, int workers) {
    return stochastic_heat_trace_multi(kernel, {t}, probes, cheb_degree, seed, workers)[0];
}

} // namespace drw
