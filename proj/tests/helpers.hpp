// Shared numeric helpers for the test binaries.
#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

// Least-squares slope of log(err) against log(h): the observed convergence
// order of a parameter sweep.  Inputs must be positive and the same length.
inline double loglog_slope(const std::vector<double>& h, const std::vector<double>& err) {
    const std::size_t n = h.size();
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = std::log(h[i]);
        const double y = std::log(err[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double d = double(n) * sxx - sx * sx;
    return (double(n) * sxy - sx * sy) / d;
}
