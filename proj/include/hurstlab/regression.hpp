#pragma once

#include <span>

namespace hurstlab {

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
};

// Ordinary least squares y = intercept + slope * x. Throws SingularFit when
// fewer than two points are given or all x are equal, DegenerateStructure
// when any value is non-finite.
LineFit fit_line(std::span<const double> x, std::span<const double> y);

} // namespace hurstlab
