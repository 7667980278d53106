#include "hurstlab/ghe.hpp"

#include "hurstlab/errors.hpp"
#include "hurstlab/regression.hpp"

#include <cmath>
#include <limits>
#include <numeric>

namespace hurstlab::ghe {

namespace {

constexpr std::size_t kMinLength = 100;

// |d|^q with exact fast paths for the common orders.
struct PowerSum {
    double q;

    double operator()(double abs_value, double log_abs) const {
        if (q == 1.0) return abs_value;
        if (q == 2.0) return abs_value * abs_value;
        return abs_value == 0.0 ? 0.0 : std::exp(q * log_abs);
    }
};

// Row i holds K_{q_i}(tau) for tau = 1..tau_max. Entries are NaN when the
// structure function is degenerate at that q.
std::vector<std::vector<double>> structure_matrix(std::span<const double> path,
                                                  std::span<const double> q_grid, int tau_max) {
    const std::size_t len = path.size();
    std::vector<double> abs_level(len);
    std::vector<double> log_level(len);
    for (std::size_t t = 0; t < len; ++t) {
        abs_level[t] = std::abs(path[t]);
        log_level[t] = abs_level[t] > 0.0 ? std::log(abs_level[t]) : 0.0;
    }
    std::vector<double> denom(q_grid.size(), 0.0);
    for (std::size_t i = 0; i < q_grid.size(); ++i) {
        const PowerSum pw{q_grid[i]};
        double acc = 0.0;
        for (std::size_t t = 0; t < len; ++t) {
            acc += pw(abs_level[t], log_level[t]);
        }
        denom[i] = acc / static_cast<double>(len);
    }

    std::vector<std::vector<double>> k(q_grid.size(), std::vector<double>(static_cast<std::size_t>(tau_max)));
    std::vector<double> abs_inc;
    std::vector<double> log_inc;
    for (int tau = 1; tau <= tau_max; ++tau) {
        const auto lag = static_cast<std::size_t>(tau);
        const std::size_t count = len - lag;
        abs_inc.resize(count);
        log_inc.resize(count);
        for (std::size_t t = 0; t < count; ++t) {
            abs_inc[t] = std::abs(path[t + lag] - path[t]);
            log_inc[t] = abs_inc[t] > 0.0 ? std::log(abs_inc[t]) : 0.0;
        }
        for (std::size_t i = 0; i < q_grid.size(); ++i) {
            const PowerSum pw{q_grid[i]};
            double acc = 0.0;
            for (std::size_t t = 0; t < count; ++t) {
                acc += pw(abs_inc[t], log_inc[t]);
            }
            const double value = (acc / static_cast<double>(count)) / denom[i];
            k[i][lag - 1] = (value > 0.0 && std::isfinite(value)) ? value
                                                                  : std::numeric_limits<double>::quiet_NaN();
        }
    }
    return k;
}

void check_tau_max(std::size_t len, int tau_max) {
    if (tau_max < 2) {
        throw ConfigError("tau_max must be at least 2");
    }
    if (len < 4 * static_cast<std::size_t>(tau_max)) {
        throw TooShort("path of length " + std::to_string(len) + " is too short for tau_max " +
                       std::to_string(tau_max));
    }
}

} // namespace

std::vector<double> default_q_grid() {
    std::vector<double> q;
    for (int i = 1; i <= 40; ++i) {
        q.push_back(static_cast<double>(i) / 10.0);
    }
    return q;
}

void validate(const GheConfig& config, std::size_t n) {
    if (config.q_grid.empty()) {
        throw ConfigError("GHE q grid is empty");
    }
    for (double q : config.q_grid) {
        if (!(q > 0.0) || !std::isfinite(q)) {
            throw ConfigError("GHE moments need q > 0");
        }
    }
    if (config.tau_max_min < 2 || config.tau_max_max < config.tau_max_min) {
        throw ConfigError("GHE tau_max range must satisfy 2 <= min <= max");
    }
    if (n > 0 && static_cast<std::size_t>(config.tau_max_max) * 4 >= n) {
        throw ConfigError("GHE tau_max " + std::to_string(config.tau_max_max) +
                          " must be below n/4 for n = " + std::to_string(n));
    }
}

std::vector<double> cumulative_path(std::span<const double> returns) {
    std::vector<double> path(returns.size() + 1, 0.0);
    if (returns.empty()) {
        return path;
    }
    const double mean = std::accumulate(returns.begin(), returns.end(), 0.0) / static_cast<double>(returns.size());
    for (std::size_t t = 0; t < returns.size(); ++t) {
        path[t + 1] = path[t] + (returns[t] - mean);
    }
    return path;
}

StructureFunction structure_function_of_path(std::span<const double> path, double q, int tau_max) {
    if (!(q > 0.0)) {
        throw ConfigError("structure function needs q > 0");
    }
    check_tau_max(path.size(), tau_max);
    const double qs[] = {q};
    auto k = structure_matrix(path, qs, tau_max);
    for (std::size_t j = 0; j < k[0].size(); ++j) {
        if (std::isnan(k[0][j])) {
            throw DegenerateStructure("K_q(" + std::to_string(j + 1) + ") is zero for q = " + std::to_string(q));
        }
    }
    return StructureFunction{q, std::move(k[0])};
}

StructureFunction structure_function(const ReturnSeries& series, double q, int tau_max) {
    const auto path = cumulative_path(series.values);
    return structure_function_of_path(path, q, tau_max);
}

double GheResult::h_at(double q) const {
    for (std::size_t i = 0; i < q_grid.size(); ++i) {
        if (std::abs(q_grid[i] - q) < 1e-9) {
            return h_of_q[i];
        }
    }
    throw ConfigError("q = " + std::to_string(q) + " is not on the GHE grid");
}

GheResult estimate_hurst(std::span<const double> returns, const GheConfig& config) {
    if (returns.size() < kMinLength) {
        throw TooShort("GHE needs at least " + std::to_string(kMinLength) + " observations, got " +
                       std::to_string(returns.size()));
    }
    validate(config, returns.size());
    const auto path = cumulative_path(returns);
    const auto k = structure_matrix(path, config.q_grid, config.tau_max_max);

    std::vector<double> log_tau(static_cast<std::size_t>(config.tau_max_max));
    for (std::size_t j = 0; j < log_tau.size(); ++j) {
        log_tau[j] = std::log(static_cast<double>(j + 1));
    }

    const std::size_t nq = config.q_grid.size();
    const auto n_fits = static_cast<std::size_t>(config.tau_max_max - config.tau_max_min + 1);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    GheResult out;
    out.q_grid = config.q_grid;
    out.tau_max_min = config.tau_max_min;
    out.tau_max_max = config.tau_max_max;
    out.h_of_q.assign(nq, nan);
    out.h_stderr.assign(nq, nan);
    out.qhq.assign(nq, nan);
    out.h_by_tau_max.assign(nq, std::vector<double>(n_fits, nan));
    out.q_errors.assign(nq, std::string{});

    std::vector<double> log_k(log_tau.size());
    std::size_t failures = 0;
    for (std::size_t i = 0; i < nq; ++i) {
        const double q = config.q_grid[i];
        try {
            for (std::size_t j = 0; j < log_k.size(); ++j) {
                if (std::isnan(k[i][j])) {
                    throw DegenerateStructure("K_q(" + std::to_string(j + 1) + ") is zero");
                }
                log_k[j] = std::log(k[i][j]);
            }
            double sum = 0.0;
            for (std::size_t f = 0; f < n_fits; ++f) {
                const auto tau_max = static_cast<std::size_t>(config.tau_max_min) + f;
                const auto fit = fit_line(std::span(log_tau).first(tau_max), std::span(log_k).first(tau_max));
                out.h_by_tau_max[i][f] = fit.slope / q;
                sum += out.h_by_tau_max[i][f];
            }
            const double mean = sum / static_cast<double>(n_fits);
            double ss = 0.0;
            for (double h : out.h_by_tau_max[i]) {
                ss += (h - mean) * (h - mean);
            }
            out.h_of_q[i] = mean;
            out.h_stderr[i] = n_fits > 1 ? std::sqrt(ss / static_cast<double>(n_fits - 1)) : 0.0;
            out.qhq[i] = q * mean;
        } catch (const DataError& e) {
            out.q_errors[i] = e.what();
            ++failures;
        }
    }
    if (failures == nq) {
        throw DegenerateStructure("generalized Hurst exponent failed for every q: " + out.q_errors.front());
    }
    return out;
}

GheResult estimate_hurst(const ReturnSeries& series, const GheConfig& config) {
    return estimate_hurst(std::span<const double>(series.values), config);
}

std::vector<std::pair<double, double>> qhq_curve(const GheResult& result) {
    std::vector<std::pair<double, double>> curve;
    for (std::size_t i = 0; i < result.q_grid.size(); ++i) {
        if (result.ok(i)) {
            curve.emplace_back(result.q_grid[i], result.q_grid[i] * result.h_of_q[i]);
        }
    }
    return curve;
}

double linearity_residual(std::span<const std::pair<double, double>> curve) {
    std::vector<double> x;
    std::vector<double> y;
    for (const auto& [q, v] : curve) {
        x.push_back(q);
        y.push_back(v);
    }
    const auto fit = fit_line(x, y);
    double worst = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        worst = std::max(worst, std::abs(y[i] - (fit.intercept + fit.slope * x[i])));
    }
    return worst;
}

} // namespace hurstlab::ghe
