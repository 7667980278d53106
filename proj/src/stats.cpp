#include "hurstlab/stats.hpp"

#include "hurstlab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace hurstlab::stats {

double mean(std::span<const double> values) {
    if (values.empty()) {
        throw TooShort("mean of an empty sample");
    }
    return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

double median(std::span<const double> values) {
    if (values.empty()) {
        throw TooShort("median of an empty sample");
    }
    std::vector<double> v(values.begin(), values.end());
    const std::size_t mid = v.size() / 2;
    std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
    const double upper = v[mid];
    if (v.size() % 2 == 1) {
        return upper;
    }
    const double lower = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
    return 0.5 * (lower + upper);
}

double std_dev(std::span<const double> values) {
    if (values.size() < 2) {
        throw TooShort("standard deviation needs at least two values");
    }
    const double m = mean(values);
    double ss = 0.0;
    for (double x : values) {
        ss += (x - m) * (x - m);
    }
    return std::sqrt(ss / static_cast<double>(values.size() - 1));
}

double jb_from_moments(std::size_t n, double skewness, double kurtosis) {
    const double excess = kurtosis - 3.0;
    return static_cast<double>(n) / 6.0 * (skewness * skewness + excess * excess / 4.0);
}

DescriptiveStats describe(std::span<const double> values) {
    const std::size_t n = values.size();
    if (n < 4) {
        throw TooShort("descriptive statistics need at least 4 observations, got " + std::to_string(n));
    }
    DescriptiveStats out;
    out.n = n;
    out.mean = mean(values);
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    out.min = *lo;
    out.max = *hi;
    out.median = median(values);

    double m2 = 0.0;
    double m3 = 0.0;
    double m4 = 0.0;
    for (double x : values) {
        const double d = x - out.mean;
        const double d2 = d * d;
        m2 += d2;
        m3 += d2 * d;
        m4 += d2 * d2;
    }
    const double nd = static_cast<double>(n);
    if (!(m2 > 0.0)) {
        throw DegenerateSeries("series has zero variance");
    }
    out.std_dev = std::sqrt(m2 / (nd - 1.0));
    m2 /= nd;
    m3 /= nd;
    m4 /= nd;
    out.skewness = m3 / std::pow(m2, 1.5);
    out.kurtosis = m4 / (m2 * m2);
    out.jarque_bera = jb_from_moments(n, out.skewness, out.kurtosis);
    return out;
}

DescriptiveStats describe(const ReturnSeries& series) {
    return describe(std::span<const double>(series.values));
}

double quantile_sorted(std::span<const double> sorted, double p) {
    if (sorted.empty()) {
        throw TooShort("quantile of an empty sample");
    }
    if (!(p >= 0.0 && p <= 1.0)) {
        throw ConfigError("quantile level must be in [0, 1]");
    }
    const double pos = p * static_cast<double>(sorted.size() - 1);
    const auto lower = static_cast<std::size_t>(std::floor(pos));
    const std::size_t upper = std::min(lower + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lower);
    return sorted[lower] + frac * (sorted[upper] - sorted[lower]);
}

} // namespace hurstlab::stats
