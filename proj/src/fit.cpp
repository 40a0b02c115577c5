#include "kp2/fit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace kp2 {

FitResult fit_loglog(std::vector<std::pair<double, double>> samples) {
    if (samples.size() < 2)
        throw std::invalid_argument("fit_loglog: need at least 2 samples to fit a slope");
    std::sort(samples.begin(), samples.end());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = double(samples.size());
    for (auto& [x, y] : samples) {
        if (x <= 0 || y <= 0) throw std::invalid_argument("fit_loglog: nonpositive sample");
        double lx = std::log2(x), ly = std::log2(y);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    double denom = n * sxx - sx * sx;
    if (denom == 0) throw std::invalid_argument("fit_loglog: degenerate abscissae");
    FitResult r;
    r.slope = (n * sxy - sx * sy) / denom;
    r.intercept = (sy - r.slope * sx) / n;
    for (auto& [x, y] : samples) {
        double res = std::fabs(std::log2(y) - (r.slope * std::log2(x) + r.intercept));
        r.max_residual = std::max(r.max_residual, res);
    }
    r.samples = std::move(samples);
    return r;
}

}  // namespace kp2
