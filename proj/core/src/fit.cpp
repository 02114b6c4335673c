#include "mpe/fit.hpp"

#include <algorithm>
#include <cmath>

namespace mpe {

FitResult fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    FitResult f;
    const std::size_t n = std::min(x.size(), y.size());
    f.n = n;
    if (n < 2) return f;

    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);

    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = x[i] - mx, dy = y[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx == 0.0) return f;

    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    if (syy == 0.0) {
        f.r2 = 1.0; // constant data, fit reproduces it exactly
    } else {
        const double ss_res = syy - f.slope * sxy;
        f.r2 = 1.0 - std::max(0.0, ss_res) / syy;
    }
    return f;
}

} // namespace mpe
