#pragma once

#include <vector>

namespace drw {

/// Weighted least-squares fit of log y = intercept + slope * log x, with
/// per-point standard deviations sigma_y propagated to log scale.
struct LogLogFit {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_stderr = 0.0;
    double r_squared = 0.0;
    int points = 0;
};

/// Requires x, y > 0 and at least 3 points; throws InsufficientDataError
/// otherwise. sigma entries <= 0 are treated as equal weights.
LogLogFit weighted_loglog_fit(const std::vector<double>& x, const std::vector<double>& y,
                              const std::vector<double>& sigma_y);

} // namespace drw
