#pragma once

#include "hurstlab/series.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace hurstlab::mfdfa {

// lo, lo + step, ..., hi (inclusive, computed as lo + i * step).
std::vector<double> make_q_grid(double lo, double hi, double step);

// -4.0 to 4.0 in steps of 0.25; includes q = 0.
std::vector<double> default_q_grid();

// `count` log-spaced values in [lo, hi], rounded to integers and deduplicated.
std::vector<std::size_t> log_spaced_scales(std::size_t lo, std::size_t hi, std::size_t count);

// Powers of two in [lo, hi]. On dyadic series (cascades) these keep every
// segment aligned with the construction, which removes most of the small-scale
// bias that non-aligned scales show.
std::vector<std::size_t> dyadic_scales(std::size_t lo, std::size_t hi);

struct MfdfaConfig {
    std::vector<double> q_grid = default_q_grid();
    // Explicit scales take precedence. When empty, scale_count log-spaced
    // scales in [scale_min, scale_max] are used, with scale_max = 0 meaning n/4.
    std::vector<std::size_t> scales;
    std::size_t scale_min = 10;
    std::size_t scale_max = 0;
    std::size_t scale_count = 16;
    int detrend_order = 1;
};

std::vector<std::size_t> resolve_scales(const MfdfaConfig& config, std::size_t n);

// Throws ConfigError unless scales are strictly increasing, there are at
// least 6 of them, min scale > order + 1, max scale <= n / 4, and the q grid
// is non-empty.
void validate(const MfdfaConfig& config, std::size_t n);

// Cumulative sum of the demeaned series, starting from the origin:
// y[0] = 0 and y[i] = sum_{k < i} (x_k - mean), so y has n + 1 points and
// y[n] = 0 up to rounding. Keeping both endpoints makes the profile of the
// time-reversed series the negated reversal of this one.
struct Profile {
    std::vector<double> y;

    std::size_t size() const noexcept { return y.size(); }
};

Profile profile(std::span<const double> values);

// Least-squares polynomial detrending of fixed-length segments. The basis is
// orthonormal over the sample points 0..s-1 and is built once per (s, order).
class SegmentDetrender {
public:
    SegmentDetrender(std::size_t length, int order);

    std::size_t length() const noexcept { return length_; }
    int order() const noexcept { return order_; }

    // Mean squared residual of the segment after removing its best-fit
    // polynomial. Residuals at rounding level are reported as exactly 0.
    double residual_variance(std::span<const double> segment) const;

private:
    std::size_t length_;
    int order_;
    std::vector<double> basis_; // (order + 1) rows of `length_` values
};

// F^2(nu, s) for the N_s = floor(L / s) segments taken from the start of the
// profile followed by the N_s segments taken from its end (2 N_s values).
// Throws ConfigError when s < order + 2 or s > L.
std::vector<double> segment_fluctuations(const Profile& profile, std::size_t s, int order);

struct Fluctuation {
    double value = 0.0;
    std::size_t excluded = 0; // zero-variance segments left out (q <= 0 only)
};

// q != 0: ( mean_nu [F^2]^{q/2} )^{1/q};  q == 0: exp( mean_nu ln F^2 / 2 ).
// For q <= 0, zero-variance segments are excluded from the average; throws
// ZeroVarianceSegment when no segment remains.
Fluctuation fluctuation_function(std::span<const double> f2, double q);

struct ScalingFit {
    std::vector<double> h_of_q;
    std::vector<double> fit_r2;
};

// fq[i][j] = F_{q_i}(scales[j]); H(q_i) is the OLS slope of ln F on ln s.
ScalingFit hurst_from_scaling(const std::vector<std::vector<double>>& fq, std::span<const double> q_grid,
                              std::span<const std::size_t> scales);

// tau(q) = q H(q) - 1
std::vector<double> mass_exponent(std::span<const double> q_grid, std::span<const double> h_of_q);

struct Spectrum {
    std::vector<double> alpha;
    std::vector<double> f_alpha;
};

// alpha = d tau / dq by central differences (one-sided at the ends) on a
// uniform grid; f(alpha) = q alpha - tau.
Spectrum legendre_spectrum(std::span<const double> tau_of_q, std::span<const double> q_grid);

struct MfdfaResult {
    std::vector<double> q_grid;
    std::vector<std::size_t> scales;
    int detrend_order = 1;
    std::vector<std::vector<double>> fluctuation; // [q][scale]
    std::vector<double> h_of_q;
    std::vector<double> fit_r2;
    std::vector<double> tau_of_q;
    std::vector<double> alpha;
    std::vector<double> f_alpha;
    double delta_h = 0.0;
    double delta_alpha = 0.0;
    std::size_t zero_variance_segments = 0;
    std::size_t zero_variance_scales = 0; // scales left out of the fit because F_q(s) = 0
    std::vector<std::string> warnings;
};

struct MultifractalityMeasures {
    double delta_h = 0.0;
    double delta_alpha = 0.0;
};

// max - min of H(q) and of alpha over the configured grid.
MultifractalityMeasures multifractality_measures(const MfdfaResult& result);

// The full pipeline: profile, detrended segment variances, F_q(s), H(q),
// tau(q), spectrum and the two measures. Throws DegenerateSeries for a
// constant series, ZeroVarianceSegment when fewer than 3 scales have
// non-zero fluctuation.
MfdfaResult analyze(std::span<const double> values, const MfdfaConfig& config);
MfdfaResult analyze(const ReturnSeries& series, const MfdfaConfig& config);

} // namespace hurstlab::mfdfa
