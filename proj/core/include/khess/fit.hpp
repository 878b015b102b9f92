#pragma once

#include <span>

namespace khess {

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    int points = 0;
};

/// Ordinary least squares y = intercept + slope * x.
LineFit fit_line(std::span<const double> x, std::span<const double> y);

/// Slope of log y against log x. Non-positive entries are rejected.
LineFit fit_loglog(std::span<const double> x, std::span<const double> y);

}  // namespace khess
