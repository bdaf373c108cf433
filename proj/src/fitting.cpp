#include "drw/fitting.hpp"

#include <cmath>
#include <stdexcept>

#include "drw/errors.hpp"

namespace drw {

LogLogFit weighted_loglog_fit(const std::vector<double>& x, const std::vector<double>& y,
                              const std::vector<double>& sigma_y) {
    if (x.size() != y.size() || x.size() != sigma_y.size())
        throw std::invalid_argument("weighted_loglog_fit: size mismatch");
    std::vector<double> lx, ly, w;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] <= 0.0 || y[i] <= 0.0) continue;
        lx.push_back(std::log(x[i]));
        ly.push_back(std::log(y[i]));
        const double sigma_log = sigma_y[i] > 0.0 ? sigma_y[i] / y[i] : 1.0;
        w.push_back(1.0 / (sigma_log * sigma_log));
    }
    const int n = static_cast<int>(lx.size());
    if (n < 3) throw InsufficientDataError("weighted_loglog_fit: need at least 3 usable points");

    double sw = 0, swx = 0, swy = 0, swxx = 0, swxy = 0;
    for (int i = 0; i < n; ++i) {
        sw += w[i];
        swx += w[i] * lx[i];
        swy += w[i] * ly[i];
        swxx += w[i] * lx[i] * lx[i];
        swxy += w[i] * lx[i] * ly[i];
    }
    const double denom = sw * swxx - swx * swx;
    if (denom <= 0.0) throw InsufficientDataError("weighted_loglog_fit: degenerate abscissae");

    LogLogFit fit;
    fit.points = n;
    fit.slope = (sw * swxy - swx * swy) / denom;
    fit.intercept = (swy - fit.slope * swx) / sw;
    fit.slope_stderr = std::sqrt(sw / denom);

    const double mean_y = swy / sw;
    double ss_res = 0, ss_tot = 0;
    for (int i = 0; i < n; ++i) {
        const double fitted = fit.intercept + fit.slope * lx[i];
        ss_res += w[i] * (ly[i] - fitted) * (ly[i] - fitted);
        ss_tot += w[i] * (ly[i] - mean_y) * (ly[i] - mean_y);
    }
    fit.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
    // Inflate the formal error when the residuals exceed the stated noise;
    // power laws here carry finite-size corrections the sigmas know nothing
    // about.
    fit.slope_stderr *= std::sqrt(std::max(1.0, ss_res / std::max(1, n - 2)));
    return fit;
}

} // namespace drw
