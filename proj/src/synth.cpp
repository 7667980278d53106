#include "hurstlab/synth.hpp"

#include "hurstlab/errors.hpp"
#include "hurstlab/rng.hpp"

#include <fftw3.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <memory>
#include <mutex>
#include <vector>

namespace hurstlab::synth {

namespace {

// FFTW's planner is not thread-safe; plan execution is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

struct FftwFree {
    void operator()(fftw_complex* p) const noexcept { fftw_free(p); }
};
using FftwBuffer = std::unique_ptr<fftw_complex[], FftwFree>;

// In-place forward DFT, X_k = sum_j x_j exp(-2 pi i j k / m).
void forward_dft(std::vector<std::complex<double>>& data) {
    const int m = static_cast<int>(data.size());
    FftwBuffer buf(fftw_alloc_complex(data.size()));
    fftw_plan plan = nullptr;
    {
        std::lock_guard lock(planner_mutex());
        plan = fftw_plan_dft_1d(m, buf.get(), buf.get(), FFTW_FORWARD, FFTW_ESTIMATE);
    }
    for (std::size_t i = 0; i < data.size(); ++i) {
        buf[i][0] = data[i].real();
        buf[i][1] = data[i].imag();
    }
    fftw_execute(plan);
    for (std::size_t i = 0; i < data.size(); ++i) {
        data[i] = {buf[i][0], buf[i][1]};
    }
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan);
}

ReturnSeries make_series(std::string ticker, std::vector<double> values, std::uint64_t seed) {
    ReturnSeries out;
    out.ticker = std::move(ticker);
    out.values = std::move(values);
    out.seed = seed;
    return out;
}

void require_kind(const SynthSpec& spec, SynthKind kind) {
    if (spec.kind != kind) {
        throw ConfigError("synth spec kind is " + std::string(to_string(spec.kind)) + ", expected " +
                          std::string(to_string(kind)));
    }
}

std::vector<double> fgn_values_hosking(std::size_t n, double hurst, Rng& rng) {
    std::vector<double> gamma(n);
    for (std::size_t k = 0; k < n; ++k) {
        gamma[k] = fgn_autocovariance(hurst, k);
    }
    std::vector<double> x(n);
    std::vector<double> phi(n, 0.0);
    std::vector<double> prev(n, 0.0);
    double v = gamma[0];
    x[0] = std::sqrt(v) * rng.normal();
    for (std::size_t t = 1; t < n; ++t) {
        double acc = gamma[t];
        for (std::size_t j = 1; j < t; ++j) {
            acc -= prev[j] * gamma[t - j];
        }
        const double phi_tt = acc / v;
        phi[t] = phi_tt;
        for (std::size_t j = 1; j < t; ++j) {
            phi[j] = prev[j] - phi_tt * prev[t - j];
        }
        v *= (1.0 - phi_tt * phi_tt);
        double mean = 0.0;
        for (std::size_t j = 1; j <= t; ++j) {
            mean += phi[j] * x[t - j];
        }
        x[t] = mean + std::sqrt(std::max(v, 0.0)) * rng.normal();
        std::copy(phi.begin(), phi.begin() + static_cast<std::ptrdiff_t>(t + 1), prev.begin());
    }
    return x;
}

} // namespace

std::string_view to_string(SynthKind kind) {
    switch (kind) {
    case SynthKind::fgn: return "fgn";
    case SynthKind::fbm: return "fbm";
    case SynthKind::gaussian_white: return "gaussian_white";
    case SynthKind::binomial_cascade: return "binomial_cascade";
    }
    return "unknown";
}

SynthKind parse_kind(std::string_view name) {
    if (name == "fgn") return SynthKind::fgn;
    if (name == "fbm") return SynthKind::fbm;
    if (name == "gaussian_white" || name == "white") return SynthKind::gaussian_white;
    if (name == "binomial_cascade" || name == "cascade") return SynthKind::binomial_cascade;
    throw ConfigError("unknown series kind '" + std::string(name) + "'");
}

void validate(const SynthSpec& spec) {
    if (spec.n < 16) {
        throw ConfigError("synthetic series length must be at least 16");
    }
    switch (spec.kind) {
    case SynthKind::fgn:
    case SynthKind::fbm:
        if (!(spec.hurst > 0.0 && spec.hurst < 1.0)) {
            throw ConfigError("hurst must lie strictly between 0 and 1");
        }
        break;
    case SynthKind::binomial_cascade:
        if (!(spec.cascade_weight > 0.5 && spec.cascade_weight < 1.0)) {
            throw ConfigError("cascade weight must lie strictly between 0.5 and 1");
        }
        if (!std::has_single_bit(spec.n)) {
            throw ConfigError("cascade length must be a power of two, got " + std::to_string(spec.n));
        }
        break;
    case SynthKind::gaussian_white:
        break;
    }
}

double fgn_autocovariance(double hurst, std::size_t lag) {
    const double k = static_cast<double>(lag);
    const double e = 2.0 * hurst;
    return 0.5 * (std::pow(k + 1.0, e) - 2.0 * std::pow(k, e) + std::pow(std::abs(k - 1.0), e));
}

ReturnSeries generate(const SynthSpec& spec) {
    switch (spec.kind) {
    case SynthKind::fgn: return generate_fgn(spec);
    case SynthKind::fbm: return generate_fbm(spec);
    case SynthKind::gaussian_white: return generate_gaussian_white(spec);
    case SynthKind::binomial_cascade: return generate_binomial_cascade(spec);
    }
    throw ConfigError("unknown series kind");
}

ReturnSeries generate_fgn(const SynthSpec& spec) {
    require_kind(spec, SynthKind::fgn);
    validate(spec);
    const std::size_t n = spec.n;
    const std::size_t m = 2 * n;

    // First row of the circulant: gamma(0..n), then gamma(n-1..1).
    std::vector<std::complex<double>> row(m);
    for (std::size_t j = 0; j <= n; ++j) {
        row[j] = fgn_autocovariance(spec.hurst, j);
    }
    for (std::size_t j = n + 1; j < m; ++j) {
        row[j] = row[m - j];
    }
    forward_dft(row);

    std::vector<double> lambda(m);
    double lambda_max = 0.0;
    double lambda_min = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
        lambda[k] = row[k].real();
        lambda_max = std::max(lambda_max, lambda[k]);
        lambda_min = std::min(lambda_min, lambda[k]);
    }
    if (lambda_min < -1e-10 * lambda_max) {
        return generate_fgn_hosking(spec);
    }

    Rng rng(spec.seed);
    const double md = static_cast<double>(m);
    std::vector<std::complex<double>> w(m);
    w[0] = std::sqrt(std::max(lambda[0], 0.0) / md) * rng.normal();
    w[n] = std::sqrt(std::max(lambda[n], 0.0) / md) * rng.normal();
    for (std::size_t k = 1; k < n; ++k) {
        const double scale = std::sqrt(std::max(lambda[k], 0.0) / (2.0 * md));
        const double re = rng.normal();
        const double im = rng.normal();
        w[k] = {scale * re, scale * im};
        w[m - k] = std::conj(w[k]);
    }
    forward_dft(w);

    std::vector<double> values(n);
    for (std::size_t j = 0; j < n; ++j) {
        values[j] = w[j].real();
    }
    return make_series("fgn", std::move(values), spec.seed);
}

ReturnSeries generate_fgn_hosking(const SynthSpec& spec) {
    require_kind(spec, SynthKind::fgn);
    validate(spec);
    Rng rng(spec.seed);
    return make_series("fgn", fgn_values_hosking(spec.n, spec.hurst, rng), spec.seed);
}

ReturnSeries generate_fbm(const SynthSpec& spec) {
    require_kind(spec, SynthKind::fbm);
    SynthSpec noise = spec;
    noise.kind = SynthKind::fgn;
    const ReturnSeries increments = generate_fgn(noise);
    std::vector<double> path(spec.n);
    path[0] = 0.0;
    for (std::size_t t = 1; t < spec.n; ++t) {
        path[t] = path[t - 1] + increments.values[t - 1];
    }
    return make_series("fbm", std::move(path), spec.seed);
}

ReturnSeries generate_binomial_cascade(const SynthSpec& spec) {
    require_kind(spec, SynthKind::binomial_cascade);
    validate(spec);
    const auto levels = static_cast<unsigned>(std::countr_zero(spec.n));
    const double a = spec.cascade_weight;
    std::vector<double> heavy(levels + 1);
    std::vector<double> light(levels + 1);
    heavy[0] = 1.0;
    light[0] = 1.0;
    for (unsigned i = 1; i <= levels; ++i) {
        heavy[i] = heavy[i - 1] * a;
        light[i] = light[i - 1] * (1.0 - a);
    }
    std::vector<double> values(spec.n);
    for (std::size_t i = 0; i < spec.n; ++i) {
        const auto ones = static_cast<unsigned>(std::popcount(i));
        values[i] = heavy[ones] * light[levels - ones];
    }
    if (spec.cascade_signs) {
        Rng signs(derive_seed(spec.seed, 1));
        for (double& v : values) {
            if (signs.next() >> 63) {
                v = -v;
            }
        }
    }
    return make_series("binomial_cascade", std::move(values), spec.seed);
}

ReturnSeries generate_gaussian_white(const SynthSpec& spec) {
    require_kind(spec, SynthKind::gaussian_white);
    validate(spec);
    Rng rng(spec.seed);
    std::vector<double> values(spec.n);
    for (double& v : values) {
        v = rng.normal();
    }
    return make_series("gaussian_white", std::move(values), spec.seed);
}

double cascade_hurst(double weight, double q) {
    const double a = weight;
    const double b = 1.0 - weight;
    if (q == 0.0) {
        return -(std::log(a) + std::log(b)) / (2.0 * std::log(2.0));
    }
    return 1.0 / q - std::log(std::pow(a, q) + std::pow(b, q)) / (q * std::log(2.0));
}

double cascade_alpha(double weight, double q) {
    const double a = weight;
    const double b = 1.0 - weight;
    const double aq = std::pow(a, q);
    const double bq = std::pow(b, q);
    return -(aq * std::log(a) + bq * std::log(b)) / ((aq + bq) * std::log(2.0));
}

double cascade_sign_offset(double weight) {
    const double a = weight;
    const double b = 1.0 - weight;
    return std::log(a * a + b * b) / (2.0 * std::log(2.0));
}

} // namespace hurstlab::synth
