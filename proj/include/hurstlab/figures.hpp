#pragma once

#include "hurstlab/results.hpp"

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

namespace hurstlab::figures {

enum class FigureId {
    hurst_vs_volume_q1,
    hurst_vs_volume_q2,
    qhq_by_quartile,
    qhq_shuffled_by_quartile,
    kurtosis_vs_delta_h,
    kurtosis_vs_delta_alpha,
};

std::string_view to_string(FigureId id);
// Throws ConfigError for an unknown id.
FigureId parse_figure_id(std::string_view name);
std::vector<FigureId> all_figures();

struct Density {
    double bandwidth = 0.0; // 0 when the sample cannot support a kernel estimate
    std::vector<double> x;
    std::vector<double> y;
};

// Gaussian kernel density of `sample` on `points` evenly spaced values over
// [lo, hi]. Bandwidth by the normal reference rule 1.06 * sd * n^(-1/5).
// Samples with fewer than two values or zero spread give an empty density.
Density kernel_density(std::span<const double> sample, double lo, double hi, std::size_t points = 256);

// Writes one figure as CSV. '#' header lines name the figure, the pipeline
// seed and, for density figures, the kernel and per-quartile bandwidths.
// Throws DataError when `results` is empty.
void emit_figure_data(std::span<const TickerResult> results, const Benchmark& benchmark, FigureId id,
                      std::uint64_t seed, std::ostream& out);

} // namespace hurstlab::figures
