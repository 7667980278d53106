#include "hurstlab/mfdfa.hpp"

#include "hurstlab/errors.hpp"
#include "hurstlab/regression.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace hurstlab::mfdfa {

namespace {

constexpr std::size_t kMinScales = 6;
constexpr std::size_t kMinFitScales = 3;
constexpr double kMonotoneTolerance = 1e-6;
// Residual energy below this fraction of the segment energy is rounding noise.
constexpr double kZeroResidualRel = 1e-24;

// F_q from precomputed F^2 and ln F^2 (ln is unused where F^2 == 0).
Fluctuation fluctuation_from_logs(std::span<const double> f2, std::span<const double> log_f2, double q) {
    Fluctuation out;
    double acc = 0.0;
    std::size_t used = 0;
    for (std::size_t v = 0; v < f2.size(); ++v) {
        if (f2[v] == 0.0) {
            if (q <= 0.0) {
                ++out.excluded;
                continue;
            }
            ++used; // contributes 0 to the q > 0 average
            continue;
        }
        if (q == 0.0) {
            acc += log_f2[v];
        } else if (q == 2.0) {
            acc += f2[v];
        } else {
            acc += std::exp(0.5 * q * log_f2[v]);
        }
        ++used;
    }
    if (used == 0) {
        throw ZeroVarianceSegment("every segment has zero detrended variance; F_q undefined for q = " +
                                  std::to_string(q));
    }
    const double mean = acc / static_cast<double>(used);
    if (q == 0.0) {
        out.value = std::exp(0.5 * mean);
    } else if (q == 2.0) {
        out.value = std::sqrt(mean);
    } else {
        out.value = std::pow(mean, 1.0 / q);
    }
    return out;
}

void check_uniform(std::span<const double> q_grid) {
    if (q_grid.size() < 3) {
        throw ConfigError("spectrum needs at least 3 q values");
    }
    const double step = q_grid[1] - q_grid[0];
    if (!(step > 0.0)) {
        throw ConfigError("q grid must be increasing");
    }
    for (std::size_t i = 1; i < q_grid.size(); ++i) {
        if (std::abs((q_grid[i] - q_grid[i - 1]) - step) > 1e-9 * step) {
            throw ConfigError("spectrum needs a uniform q grid");
        }
    }
}

} // namespace

std::vector<double> make_q_grid(double lo, double hi, double step) {
    if (!(step > 0.0) || !(hi >= lo)) {
        throw ConfigError("q grid needs step > 0 and hi >= lo");
    }
    const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
    std::vector<double> q(count);
    for (std::size_t i = 0; i < count; ++i) {
        q[i] = lo + static_cast<double>(i) * step;
    }
    return q;
}

std::vector<double> default_q_grid() { return make_q_grid(-4.0, 4.0, 0.25); }

std::vector<std::size_t> log_spaced_scales(std::size_t lo, std::size_t hi, std::size_t count) {
    if (lo == 0 || hi < lo || count == 0) {
        throw ConfigError("scale range needs 0 < lo <= hi and count > 0");
    }
    std::vector<std::size_t> out;
    const double log_lo = std::log(static_cast<double>(lo));
    const double log_hi = std::log(static_cast<double>(hi));
    for (std::size_t i = 0; i < count; ++i) {
        const double t = count == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(count - 1);
        const auto s = static_cast<std::size_t>(std::lround(std::exp(log_lo + t * (log_hi - log_lo))));
        if (out.empty() || s > out.back()) {
            out.push_back(s);
        }
    }
    return out;
}

std::vector<std::size_t> dyadic_scales(std::size_t lo, std::size_t hi) {
    if (lo == 0 || hi < lo) {
        throw ConfigError("scale range needs 0 < lo <= hi");
    }
    std::size_t s = 1;
    while (s < lo) {
        s *= 2;
    }
    std::vector<std::size_t> out;
    for (; s <= hi; s *= 2) {
        out.push_back(s);
    }
    return out;
}

std::vector<std::size_t> resolve_scales(const MfdfaConfig& config, std::size_t n) {
    if (!config.scales.empty()) {
        return config.scales;
    }
    const std::size_t hi = config.scale_max > 0 ? config.scale_max : n / 4;
    if (hi < config.scale_min) {
        throw ConfigError("series of length " + std::to_string(n) + " is too short for minimum scale " +
                          std::to_string(config.scale_min));
    }
    return log_spaced_scales(config.scale_min, hi, config.scale_count);
}

void validate(const MfdfaConfig& config, std::size_t n) {
    if (config.q_grid.empty()) {
        throw ConfigError("MF-DFA q grid is empty");
    }
    if (config.detrend_order < 0) {
        throw ConfigError("detrend order must be non-negative");
    }
    const auto scales = resolve_scales(config, n);
    if (scales.size() < kMinScales) {
        throw ConfigError("MF-DFA needs at least " + std::to_string(kMinScales) + " scales, got " +
                          std::to_string(scales.size()));
    }
    for (std::size_t i = 1; i < scales.size(); ++i) {
        if (scales[i] <= scales[i - 1]) {
            throw ConfigError("MF-DFA scales must be strictly increasing");
        }
    }
    if (scales.front() <= static_cast<std::size_t>(config.detrend_order) + 1) {
        throw ConfigError("minimum scale must exceed detrend order + 1");
    }
    if (scales.back() > n / 4) {
        throw ConfigError("maximum scale " + std::to_string(scales.back()) + " exceeds n/4 for n = " +
                          std::to_string(n));
    }
}

Profile profile(std::span<const double> values) {
    Profile p;
    p.y.assign(values.size() + 1, 0.0);
    if (values.empty()) {
        return p;
    }
    const double mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        p.y[i + 1] = p.y[i] + (values[i] - mean);
    }
    return p;
}

SegmentDetrender::SegmentDetrender(std::size_t length, int order) : length_(length), order_(order) {
    if (order < 0 || length < static_cast<std::size_t>(order) + 2) {
        throw ConfigError("segment length " + std::to_string(length) + " is too small for detrend order " +
                          std::to_string(order));
    }
    const auto rows = static_cast<std::size_t>(order) + 1;
    basis_.assign(rows * length, 0.0);
    // Monomials of t in [-1, 1], symmetric about the segment centre, then
    // Gram-Schmidt with one re-orthogonalization pass.
    const double half = 0.5 * static_cast<double>(length - 1);
    std::vector<double> t(length);
    for (std::size_t j = 0; j < length; ++j) {
        t[j] = (static_cast<double>(j) - half) / half;
    }
    for (std::size_t d = 0; d < rows; ++d) {
        double* v = basis_.data() + d * length;
        for (std::size_t j = 0; j < length; ++j) {
            v[j] = std::pow(t[j], static_cast<double>(d));
        }
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t e = 0; e < d; ++e) {
                const double* b = basis_.data() + e * length;
                double c = 0.0;
                for (std::size_t j = 0; j < length; ++j) {
                    c += b[j] * v[j];
                }
                for (std::size_t j = 0; j < length; ++j) {
                    v[j] -= c * b[j];
                }
            }
        }
        double norm = 0.0;
        for (std::size_t j = 0; j < length; ++j) {
            norm += v[j] * v[j];
        }
        norm = std::sqrt(norm);
        for (std::size_t j = 0; j < length; ++j) {
            v[j] /= norm;
        }
    }
}

double SegmentDetrender::residual_variance(std::span<const double> segment) const {
    const std::size_t len = length_;
    if (segment.size() != len) {
        throw ConfigError("segment length does not match the detrender");
    }
    double energy = 0.0;
    for (double v : segment) {
        energy += v * v;
    }
    // Orthonormal basis: coefficients are plain inner products.
    const auto rows = static_cast<std::size_t>(order_) + 1;
    double coef[8];
    std::vector<double> coef_heap;
    double* c = coef;
    if (rows > 8) {
        coef_heap.resize(rows);
        c = coef_heap.data();
    }
    for (std::size_t d = 0; d < rows; ++d) {
        const double* b = basis_.data() + d * len;
        double acc = 0.0;
        for (std::size_t j = 0; j < len; ++j) {
            acc += b[j] * segment[j];
        }
        c[d] = acc;
    }
    double ss = 0.0;
    for (std::size_t j = 0; j < len; ++j) {
        double fit = 0.0;
        for (std::size_t d = 0; d < rows; ++d) {
            fit += c[d] * basis_[d * len + j];
        }
        const double r = segment[j] - fit;
        ss += r * r;
    }
    if (ss <= kZeroResidualRel * energy) {
        return 0.0;
    }
    return ss / static_cast<double>(len);
}

std::vector<double> segment_fluctuations(const Profile& profile, std::size_t s, int order) {
    const std::size_t len = profile.size();
    if (s > len) {
        throw ConfigError("scale " + std::to_string(s) + " exceeds profile length " + std::to_string(len));
    }
    const SegmentDetrender detrender(s, order);
    const std::size_t segments = len / s;
    std::vector<double> f2(2 * segments);
    const std::span<const double> y(profile.y);
    for (std::size_t v = 0; v < segments; ++v) {
        f2[v] = detrender.residual_variance(y.subspan(v * s, s));
        f2[segments + v] = detrender.residual_variance(y.subspan(len - (v + 1) * s, s));
    }
    return f2;
}

Fluctuation fluctuation_function(std::span<const double> f2, double q) {
    std::vector<double> logs(f2.size(), 0.0);
    for (std::size_t v = 0; v < f2.size(); ++v) {
        if (f2[v] < 0.0 || !std::isfinite(f2[v])) {
            throw DegenerateSeries("segment variance must be finite and non-negative");
        }
        if (f2[v] > 0.0) {
            logs[v] = std::log(f2[v]);
        }
    }
    return fluctuation_from_logs(f2, logs, q);
}

ScalingFit hurst_from_scaling(const std::vector<std::vector<double>>& fq, std::span<const double> q_grid,
                              std::span<const std::size_t> scales) {
    if (scales.size() < kMinScales) {
        throw SingularFit("scaling fit needs at least " + std::to_string(kMinScales) + " scales");
    }
    if (fq.size() != q_grid.size()) {
        throw SingularFit("fluctuation surface does not match the q grid");
    }
    std::vector<double> log_s(scales.size());
    for (std::size_t j = 0; j < scales.size(); ++j) {
        log_s[j] = std::log(static_cast<double>(scales[j]));
    }
    ScalingFit out;
    out.h_of_q.resize(q_grid.size());
    out.fit_r2.resize(q_grid.size());
    std::vector<double> log_f(scales.size());
    for (std::size_t i = 0; i < q_grid.size(); ++i) {
        if (fq[i].size() != scales.size()) {
            throw SingularFit("fluctuation surface does not match the scales");
        }
        for (std::size_t j = 0; j < scales.size(); ++j) {
            if (!(fq[i][j] > 0.0)) {
                throw SingularFit("F_q(s) is zero at q = " + std::to_string(q_grid[i]) +
                                  ", s = " + std::to_string(scales[j]));
            }
            log_f[j] = std::log(fq[i][j]);
        }
        const auto fit = fit_line(log_s, log_f);
        out.h_of_q[i] = fit.slope;
        out.fit_r2[i] = fit.r2;
    }
    return out;
}

std::vector<double> mass_exponent(std::span<const double> q_grid, std::span<const double> h_of_q) {
    std::vector<double> tau(q_grid.size());
    for (std::size_t i = 0; i < q_grid.size(); ++i) {
        tau[i] = q_grid[i] * h_of_q[i] - 1.0;
    }
    return tau;
}

Spectrum legendre_spectrum(std::span<const double> tau_of_q, std::span<const double> q_grid) {
    if (tau_of_q.size() != q_grid.size()) {
        throw ConfigError("tau and q grids differ in length");
    }
    check_uniform(q_grid);
    const std::size_t m = q_grid.size();
    const double step = (q_grid[m - 1] - q_grid[0]) / static_cast<double>(m - 1);
    Spectrum out;
    out.alpha.resize(m);
    out.f_alpha.resize(m);
    out.alpha[0] = (tau_of_q[1] - tau_of_q[0]) / step;
    out.alpha[m - 1] = (tau_of_q[m - 1] - tau_of_q[m - 2]) / step;
    for (std::size_t i = 1; i + 1 < m; ++i) {
        out.alpha[i] = (tau_of_q[i + 1] - tau_of_q[i - 1]) / (2.0 * step);
    }
    for (std::size_t i = 0; i < m; ++i) {
        out.f_alpha[i] = q_grid[i] * out.alpha[i] - tau_of_q[i];
    }
    return out;
}

MultifractalityMeasures multifractality_measures(const MfdfaResult& result) {
    MultifractalityMeasures out;
    if (!result.h_of_q.empty()) {
        const auto [hlo, hhi] = std::minmax_element(result.h_of_q.begin(), result.h_of_q.end());
        out.delta_h = *hhi - *hlo;
    }
    if (!result.alpha.empty()) {
        const auto [alo, ahi] = std::minmax_element(result.alpha.begin(), result.alpha.end());
        out.delta_alpha = *ahi - *alo;
    }
    return out;
}

MfdfaResult analyze(std::span<const double> values, const MfdfaConfig& config) {
    validate(config, values.size());
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    if (*lo == *hi) {
        throw DegenerateSeries("MF-DFA input is constant");
    }

    MfdfaResult out;
    out.q_grid = config.q_grid;
    out.scales = resolve_scales(config, values.size());
    out.detrend_order = config.detrend_order;

    const Profile prof = profile(values);
    const std::size_t nq = out.q_grid.size();
    out.fluctuation.assign(nq, std::vector<double>(out.scales.size()));
    std::vector<double> logs;
    for (std::size_t j = 0; j < out.scales.size(); ++j) {
        const auto f2 = segment_fluctuations(prof, out.scales[j], config.detrend_order);
        logs.assign(f2.size(), 0.0);
        for (std::size_t v = 0; v < f2.size(); ++v) {
            if (f2[v] > 0.0) {
                logs[v] = std::log(f2[v]);
            } else {
                ++out.zero_variance_segments;
            }
        }
        if (std::all_of(f2.begin(), f2.end(), [](double v) { return v == 0.0; })) {
            continue; // F_q(s) stays 0 for every q
        }
        for (std::size_t i = 0; i < nq; ++i) {
            out.fluctuation[i][j] = fluctuation_from_logs(f2, logs, out.q_grid[i]).value;
        }
    }

    // A scale whose segments are all exactly polynomial has F_q(s) = 0 for
    // every q (a flat run or a single jump on a segment boundary). ln F is
    // undefined there, so that scale drops out of the fit.
    std::vector<std::size_t> kept;
    for (std::size_t j = 0; j < out.scales.size(); ++j) {
        if (out.fluctuation[0][j] > 0.0) {
            kept.push_back(j);
        } else {
            ++out.zero_variance_scales;
        }
    }
    if (kept.size() < kMinFitScales) {
        throw ZeroVarianceSegment("only " + std::to_string(kept.size()) +
                                  " scales have non-zero fluctuation; cannot fit H(q)");
    }
    if (kept.size() == out.scales.size()) {
        auto fit = hurst_from_scaling(out.fluctuation, out.q_grid, out.scales);
        out.h_of_q = std::move(fit.h_of_q);
        out.fit_r2 = std::move(fit.fit_r2);
    } else {
        std::vector<double> log_s;
        for (auto j : kept) log_s.push_back(std::log(static_cast<double>(out.scales[j])));
        std::vector<double> log_f(kept.size());
        for (std::size_t i = 0; i < nq; ++i) {
            for (std::size_t k = 0; k < kept.size(); ++k) log_f[k] = std::log(out.fluctuation[i][kept[k]]);
            const auto line = fit_line(log_s, log_f);
            out.h_of_q.push_back(line.slope);
            out.fit_r2.push_back(line.r2);
        }
    }
    out.tau_of_q = mass_exponent(out.q_grid, out.h_of_q);
    if (nq >= 3) {
        auto spectrum = legendre_spectrum(out.tau_of_q, out.q_grid);
        out.alpha = std::move(spectrum.alpha);
        out.f_alpha = std::move(spectrum.f_alpha);
    }
    const auto measures = multifractality_measures(out);
    out.delta_h = measures.delta_h;
    out.delta_alpha = measures.delta_alpha;

    for (std::size_t i = 1; i < nq; ++i) {
        if (out.h_of_q[i] > out.h_of_q[i - 1] + kMonotoneTolerance) {
            out.warnings.emplace_back("h_of_q_not_monotone");
            break;
        }
    }
    if (!out.alpha.empty() && out.delta_alpha < out.delta_h) {
        out.warnings.emplace_back("delta_alpha_below_delta_h");
    }
    if (out.zero_variance_segments > 0) {
        out.warnings.emplace_back("zero_variance_segments_excluded");
    }
    if (out.zero_variance_scales > 0) {
        out.warnings.emplace_back("zero_variance_scales_excluded");
    }
    return out;
}

MfdfaResult analyze(const ReturnSeries& series, const MfdfaConfig& config) {
    return analyze(std::span<const double>(series.values), config);
}

} // namespace hurstlab::mfdfa
