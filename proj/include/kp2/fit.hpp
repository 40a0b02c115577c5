#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace kp2 {

// Output of an exponent experiment: least-squares slope/intercept on
// (log2 x, log2 y) plus the worst per-sample deviation from the fitted line.
struct FitResult {
    double slope = 0.0;
    double intercept = 0.0;
    double max_residual = 0.0;
    std::vector<std::pair<double, double>> samples;  // (abscissa, value), sorted by abscissa
};

// Fits log2(y) = slope * log2(x) + intercept. Requires >= 2 samples with
// positive x and y; throws std::invalid_argument otherwise.
FitResult fit_loglog(std::vector<std::pair<double, double>> samples);

}  // namespace kp2
