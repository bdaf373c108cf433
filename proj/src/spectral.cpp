#include "drw/spectral.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "drw/errors.hpp"

namespace drw {

namespace {

void check_dense_cap(int n, int cap, const char* where) {
    if (n > cap)
        throw SizeExceededError(std::string(where) + ": " + std::to_string(n) +
                                " vertices exceeds dense cap " + std::to_string(cap));
}

} // namespace

DrwKernel::DrwKernel(FiniteGraph graph, int delta)
    : graph_(std::move(graph)), delta_(delta) {
    if (delta_ < 1)
        throw std::invalid_argument("DrwKernel: delta must be >= 1");
    if (delta_ < graph_.max_degree())
        throw std::invalid_argument(
            "DrwKernel: delta " + std::to_string(delta_) + " below max degree " +
            std::to_string(graph_.max_degree()) + " (diagonal would be negative)");
}

void DrwKernel::apply(const Vector& x, Vector& y) const {
    const int n = size();
    y.resize(n);
    const double inv_delta = 1.0 / delta_;
    for (int v = 0; v < n; ++v) {
        const auto& nb = graph_.neighbors(v);
        double acc = (1.0 - nb.size() * inv_delta) * x[v];
        for (int w : nb) acc += inv_delta * x[w];
        y[v] = acc;
    }
}

Vector DrwKernel::apply(const Vector& x) const {
    Vector y;
    apply(x, y);
    return y;
}

Matrix DrwKernel::dense() const {
    const int n = size();
    Matrix p = Matrix::Zero(n, n);
    const double inv_delta = 1.0 / delta_;
    for (int v = 0; v < n; ++v) p(v, v) = 1.0 - graph_.degree(v) * inv_delta;
    for (const auto& [u, v] : graph_.edges()) {
        p(u, v) = inv_delta;
        p(v, u) = inv_delta;
    }
    return p;
}

Spectrum exact_spectrum(const DrwKernel& kernel, int dense_cap) {
    check_dense_cap(kernel.size(), dense_cap, "exact_spectrum");
    Eigen::SelfAdjointEigenSolver<Matrix> solver(kernel.dense(), Eigen::EigenvaluesOnly);
    Vector betas = solver.eigenvalues().reverse();
    return Spectrum{std::move(betas), kernel.size(), kernel.delta()};
}

EigenSystem exact_eigensystem(const DrwKernel& kernel, int dense_cap) {
    check_dense_cap(kernel.size(), dense_cap, "exact_eigensystem");
    Eigen::SelfAdjointEigenSolver<Matrix> solver(kernel.dense());
    Vector betas = solver.eigenvalues().reverse();
    Matrix vectors = solver.eigenvectors().rowwise().reverse();
    return EigenSystem{std::move(betas), std::move(vectors), kernel.delta()};
}

double max_eigen_residual(const DrwKernel& kernel, const EigenSystem& system) {
    double worst = 0.0;
    Vector pv;
    for (int j = 0; j < system.betas.size(); ++j) {
        const Vector v = system.vectors.col(j);
        kernel.apply(v, pv);
        worst = std::max(worst, (pv - system.betas[j] * v).norm());
    }
    return worst;
}

double return_probability(const Spectrum& spectrum, double t) {
    if (t < 0.0) throw std::invalid_argument("return_probability: negative time");
    double sum = 0.0;
    for (int j = 0; j < spectrum.betas.size(); ++j)
        sum += std::exp(-t * (1.0 - spectrum.betas[j]));
    return sum / spectrum.n;
}

double heat_diag_entry(const EigenSystem& system, int v, double t) {
    if (t < 0.0) throw std::invalid_argument("heat_diag_entry: negative time");
    double sum = 0.0;
    for (int j = 0; j < system.betas.size(); ++j) {
        const double weight = system.vectors(v, j) * system.vectors(v, j);
        sum += weight * std::exp(-t * (1.0 - system.betas[j]));
    }
    return sum;
}

double spectral_gap(const Spectrum& spectrum) {
    if (spectrum.n < 2)
        throw std::invalid_argument("spectral_gap: need at least two vertices");
    const double gap = 1.0 - spectrum.betas[1];
    if (gap <= 1e-9)
        throw DegenerateSpectrumError("spectral_gap: beta_2 = 1, graph disconnected");
    return gap;
}

Spectrum product_spectrum(const Spectrum& a, const Spectrum& b) {
    Vector combined(static_cast<long>(a.n) * b.n);
    long k = 0;
    for (int i = 0; i < a.n; ++i)
        for (int j = 0; j < b.n; ++j) combined[k++] = 0.5 * (a.betas[i] + b.betas[j]);
    std::sort(combined.data(), combined.data() + combined.size(), std::greater<double>());
    return Spectrum{std::move(combined), a.n * b.n, 0};
}

Matrix product_kernel_matrix(const DrwKernel& a, const DrwKernel& b) {
    const int na = a.size();
    const int nb = b.size();
    const Matrix pa = a.dense();
    const Matrix pb = b.dense();
    Matrix out = Matrix::Zero(na * nb, na * nb);
    for (int x = 0; x < na; ++x)
        for (int y = 0; y < na; ++y)
            for (int v = 0; v < nb; ++v)
                for (int w = 0; w < nb; ++w)
                    out(x * nb + v, y * nb + w) =
                        0.5 * (pa(x, y) * (v == w ? 1.0 : 0.0) + (x == y ? 1.0 : 0.0) * pb(v, w));
    return out;
}

} // namespace drw
