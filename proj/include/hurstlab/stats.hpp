#pragma once

#include "hurstlab/series.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace hurstlab::stats {

// Descriptive statistics in the column order of the returns table:
// Obs., Mean, Median, Min, Max, Std. Dev., Skewness, Kurtosis, Jarque-Bera.
//
// Skewness and kurtosis are population-moment ratios m3/m2^1.5 and m4/m2^2
// (kurtosis is non-excess; 3 for a Gaussian). Std. Dev. uses the n-1
// denominator.
struct DescriptiveStats {
    std::size_t n = 0;
    double mean = 0.0;
    double median = 0.0;
    double min = 0.0;
    double max = 0.0;
    double std_dev = 0.0;
    double skewness = 0.0;
    double kurtosis = 0.0;
    double jarque_bera = 0.0;
};

// Throws TooShort for n < 4 and DegenerateSeries for zero variance.
DescriptiveStats describe(std::span<const double> values);
DescriptiveStats describe(const ReturnSeries& series);

// (n/6) * (S^2 + (K - 3)^2 / 4), K non-excess.
double jb_from_moments(std::size_t n, double skewness, double kurtosis);

double mean(std::span<const double> values);

// Median of an unsorted sample; even lengths average the two central values.
double median(std::span<const double> values);

// Sample standard deviation (n-1 denominator).
double std_dev(std::span<const double> values);

// Linear-interpolation quantile between order statistics: position
// p * (n - 1) in the sorted sample. `sorted` must be ascending.
double quantile_sorted(std::span<const double> sorted, double p);

} // namespace hurstlab::stats
