#pragma once

#include <cstdint>
#include <vector>

#include "drw/spectral.hpp"
#include "drw/types.hpp"

namespace drw {

/// Truncated Chebyshev expansion of x -> exp(-t(1-x)) on [-1,1], plus the
/// sup-norm bound contributed by the dropped coefficients.
struct ChebyshevHeatSeries {
    double t = 0.0;
    Vector coeffs;
    double truncation = 0.0;
    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
};

/// exp(-t(1-x)) = e^-t I_0(t) + 2 e^-t sum_k I_k(t) T_k(x); valid while
/// I_k(t) stays inside double range (t up to ~600).
Vector chebyshev_heat_coeffs_bessel(double t, int count);

/// Same coefficients by Chebyshev-Gauss quadrature of function samples;
/// works for all t since only exp(-t(1-cos)) <= 1 is ever evaluated.
Vector chebyshev_heat_coeffs_cosine(double t, int count);

ChebyshevHeatSeries chebyshev_heat_series(double t, int degree);

/// max(30, ceil(2t) + 20); the coefficients decay super-geometrically past
/// degree ~ t, so this leaves a wide safety margin.
int default_cheb_degree(double t);

/// mu_k = z^T T_k(P) z for k = 0..degree, by the three-term recurrence.
Vector chebyshev_vector_moments(const DrwKernel& kernel, const Vector& z, int degree);

/// (exp(-t(I-P)))_{vv} up to series truncation (deterministic, no probes).
double chebyshev_diag_entry(const DrwKernel& kernel, int v, const ChebyshevHeatSeries& series);
std::vector<double> chebyshev_diag_entry_multi(const DrwKernel& kernel, int v,
                                               const std::vector<ChebyshevHeatSeries>& series);

struct TraceEstimate {
    enum class Method { exact, stochastic };
    double value = 0.0;
    double std_error = 0.0;
    Method method = Method::exact;
    int probes = 0;
    int cheb_degree = 0;
    double truncation = 0.0;
};

/// Hutchinson estimate of (1/n) Tr exp(-t(I-P)) with Rademacher probes and a
/// degree-`cheb_degree` Chebyshev polynomial applied through matrix-vector
/// products only. Deterministic for a given seed, for any worker count.
TraceEstimate stochastic_heat_trace(const DrwKernel& kernel, double t, int probes,
                                    int cheb_degree, std::uint64_t seed, int workers = 1);

/// Same probes evaluated at several times at once: the Chebyshev moments are
/// computed once per probe and dotted with each time's coefficients.
std::vector<TraceEstimate> stochastic_heat_trace_multi(const DrwKernel& kernel,
                                                       const std::vector<double>& times,
                                                       int probes, int cheb_degree,
                                                       std::uint64_t seed, int workers = 1);

/// Core estimator against prebuilt series (campaigns build them once and
/// share them across samples).
std::vector<TraceEstimate> stochastic_heat_trace_series(
    const DrwKernel& kernel, const std::vector<ChebyshevHeatSeries>& series, int probes,
    std::uint64_t seed, int workers = 1);

} // namespace drw
