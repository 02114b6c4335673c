#pragma once

#include <cstddef>
#include <vector>

namespace mpe {

/// Least-squares line y = slope*x + intercept with coefficient of
/// determination; n is the number of points used.
struct FitResult {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
    std::size_t n = 0;
};

/// Ordinary least squares. Fewer than 2 points or zero x-variance yields
/// slope 0, r2 0. A perfect constant fit reports r2 = 1.
FitResult fit_line(const std::vector<double>& x, const std::vector<double>& y);

} // namespace mpe
