#include "hurstlab/figures.hpp"

#include "csv_format.hpp"
#include "hurstlab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <ostream>

namespace hurstlab::figures {

using detail::csv_field;
using detail::num;

namespace {

constexpr FigureId kAll[] = {
    FigureId::hurst_vs_volume_q1,    FigureId::hurst_vs_volume_q2,  FigureId::qhq_by_quartile,
    FigureId::qhq_shuffled_by_quartile, FigureId::kurtosis_vs_delta_h, FigureId::kurtosis_vs_delta_alpha,
};

// Mean of each column over the rows that are finite there; NaN when none are.
std::vector<double> column_means(const std::vector<const std::vector<double>*>& rows, std::size_t width) {
    std::vector<double> out(width, std::nan(""));
    for (std::size_t k = 0; k < width; ++k) {
        double sum = 0.0;
        std::size_t used = 0;
        for (const auto* r : rows) {
            if (std::isfinite((*r)[k])) {
                sum += (*r)[k];
                ++used;
            }
        }
        if (used > 0) {
            out[k] = sum / static_cast<double>(used);
        }
    }
    return out;
}

std::map<int, std::vector<const TickerResult*>> by_quartile(std::span<const TickerResult> results) {
    std::map<int, std::vector<const TickerResult*>> groups;
    for (const auto& r : results) {
        groups[r.quartile].push_back(&r);
    }
    return groups;
}

void hurst_vs_volume(std::span<const TickerResult> results, double q, std::ostream& out) {
    std::vector<double> all;
    std::map<int, std::vector<double>> samples;
    for (const auto& r : results) {
        const double h = r.ghe.h_at(q);
        all.push_back(h);
        samples[r.quartile].push_back(h);
    }
    const auto [lo, hi] = std::minmax_element(all.begin(), all.end());
    std::map<int, Density> densities;
    for (const auto& [quartile, sample] : samples) {
        densities[quartile] = kernel_density(sample, *lo, *hi);
    }

    const std::string hq = "H(q=" + std::to_string(static_cast<int>(q)) + ")";
    out << "# point rows: x = log volume, y = " << hq << " from the generalized Hurst exponent\n"
        << "# density rows: x = " << hq << " on 256 evenly spaced points over the observed range, y = density\n"
        << "# kernel: gaussian; bandwidth: normal reference rule 1.06 * sd * n^(-1/5)\n";
    for (const auto& [quartile, d] : densities) {
        out << "# bandwidth quartile " << quartile << ": "
            << (d.x.empty() ? std::string("undefined (fewer than two distinct values)") : num(d.bandwidth)) << '\n';
    }
    out << "record,ticker,quartile,x,y\n";
    for (const auto& r : results) {
        out << "point," << csv_field(r.ticker) << ',' << r.quartile << ',' << num(r.mean_log_volume) << ','
            << num(r.ghe.h_at(q)) << '\n';
    }
    for (const auto& [quartile, d] : densities) {
        for (std::size_t i = 0; i < d.x.size(); ++i) {
            out << "density,," << quartile << ',' << num(d.x[i]) << ',' << num(d.y[i]) << '\n';
        }
    }
}

void qhq_by_quartile(std::span<const TickerResult> results, const Benchmark& benchmark, std::ostream& out) {
    const auto& grid = results.front().ghe.q_grid;
    out << "# qH(q) from the generalized Hurst exponent; quartile_mean rows average the ticker rows of that quartile\n"
        << "# benchmark: simulated fractional Gaussian noise, H = 0.5, n = " << benchmark.n
        << ", seed = " << benchmark.seed << '\n'
        << "series,ticker,quartile,q,qhq\n";
    for (const auto& r : results) {
        for (std::size_t k = 0; k < grid.size(); ++k) {
            out << "ticker," << csv_field(r.ticker) << ',' << r.quartile << ',' << num(grid[k]) << ','
                << num(r.ghe.qhq[k]) << '\n';
        }
    }
    for (const auto& [quartile, members] : by_quartile(results)) {
        std::vector<const std::vector<double>*> rows;
        for (const auto* m : members) rows.push_back(&m->ghe.qhq);
        const auto mean = column_means(rows, grid.size());
        for (std::size_t k = 0; k < grid.size(); ++k) {
            out << "quartile_mean,," << quartile << ',' << num(grid[k]) << ',' << num(mean[k]) << '\n';
        }
    }
    for (std::size_t k = 0; k < benchmark.ghe.q_grid.size(); ++k) {
        out << "benchmark,,," << num(benchmark.ghe.q_grid[k]) << ',' << num(benchmark.ghe.qhq[k]) << '\n';
    }
}

void qhq_shuffled(std::span<const TickerResult> results, const Benchmark& benchmark, std::ostream& out) {
    const auto& grid = results.front().surrogate.original.q_grid;
    out << "# tau(q) = qH(q) - 1 from MF-DFA; tau_shuffled averages H(q) over the shuffled surrogates\n"
        << "# benchmark: simulated fractional Gaussian noise, H = 0.5, n = " << benchmark.n
        << ", seed = " << benchmark.seed << '\n'
        << "series,ticker,quartile,q,tau,tau_shuffled\n";
    for (const auto& r : results) {
        for (std::size_t k = 0; k < grid.size(); ++k) {
            out << "ticker," << csv_field(r.ticker) << ',' << r.quartile << ',' << num(grid[k]) << ','
                << num(r.surrogate.original.tau_of_q[k]) << ',' << num(r.surrogate.shuffled_mean_tau_of_q[k])
                << '\n';
        }
    }
    for (const auto& [quartile, members] : by_quartile(results)) {
        std::vector<const std::vector<double>*> orig;
        std::vector<const std::vector<double>*> shuf;
        for (const auto* m : members) {
            orig.push_back(&m->surrogate.original.tau_of_q);
            shuf.push_back(&m->surrogate.shuffled_mean_tau_of_q);
        }
        const auto mo = column_means(orig, grid.size());
        const auto ms = column_means(shuf, grid.size());
        for (std::size_t k = 0; k < grid.size(); ++k) {
            out << "quartile_mean,," << quartile << ',' << num(grid[k]) << ',' << num(mo[k]) << ',' << num(ms[k])
                << '\n';
        }
    }
    const auto& b = benchmark.surrogate;
    for (std::size_t k = 0; k < b.original.q_grid.size(); ++k) {
        out << "benchmark,,," << num(b.original.q_grid[k]) << ',' << num(b.original.tau_of_q[k]) << ','
            << num(b.shuffled_mean_tau_of_q[k]) << '\n';
    }
}

void kurtosis_vs(std::span<const TickerResult> results, surrogate::Measure measure, std::ostream& out) {
    const std::string name(surrogate::to_string(measure));
    out << "# one row per ticker: kurtosis of returns, MF-DFA " << name << " of the original series and "
        << "its mean over the shuffled surrogates\n"
        << "ticker,quartile,kurtosis," << name << ',' << name << "_shuffled_mean\n";
    for (const auto& r : results) {
        const auto& rep = measure == surrogate::Measure::delta_h ? r.surrogate.delta_h : r.surrogate.delta_alpha;
        out << csv_field(r.ticker) << ',' << r.quartile << ',' << num(r.stats.kurtosis) << ',' << num(rep.original)
            << ',' << num(rep.shuffled_mean) << '\n';
    }
}

} // namespace

std::string_view to_string(FigureId id) {
    switch (id) {
    case FigureId::hurst_vs_volume_q1: return "hurst_vs_volume_q1";
    case FigureId::hurst_vs_volume_q2: return "hurst_vs_volume_q2";
    case FigureId::qhq_by_quartile: return "qhq_by_quartile";
    case FigureId::qhq_shuffled_by_quartile: return "qhq_shuffled_by_quartile";
    case FigureId::kurtosis_vs_delta_h: return "kurtosis_vs_delta_h";
    case FigureId::kurtosis_vs_delta_alpha: return "kurtosis_vs_delta_alpha";
    }
    return "unknown";
}

FigureId parse_figure_id(std::string_view name) {
    for (auto id : kAll) {
        if (to_string(id) == name) {
            return id;
        }
    }
    throw ConfigError("unknown figure id '" + std::string(name) + "'");
}

std::vector<FigureId> all_figures() { return {std::begin(kAll), std::end(kAll)}; }

Density kernel_density(std::span<const double> sample, double lo, double hi, std::size_t points) {
    Density d;
    if (sample.size() < 2 || points < 2 || !(hi > lo)) {
        return d;
    }
    const double sd = stats::std_dev(sample);
    if (!(sd > 0.0)) {
        return d;
    }
    const double n = static_cast<double>(sample.size());
    d.bandwidth = 1.06 * sd * std::pow(n, -0.2);
    const double norm = 1.0 / (n * d.bandwidth * std::sqrt(2.0 * std::numbers::pi));
    d.x.resize(points);
    d.y.resize(points);
    for (std::size_t i = 0; i < points; ++i) {
        const double x = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
        double acc = 0.0;
        for (double v : sample) {
            const double z = (x - v) / d.bandwidth;
            acc += std::exp(-0.5 * z * z);
        }
        d.x[i] = x;
        d.y[i] = acc * norm;
    }
    return d;
}

void emit_figure_data(std::span<const TickerResult> results, const Benchmark& benchmark, FigureId id,
                      std::uint64_t seed, std::ostream& out) {
    if (results.empty()) {
        throw DataError("no results for figure " + std::string(to_string(id)));
    }
    out << "# figure: " << to_string(id) << '\n' << "# seed: " << seed << '\n';
    switch (id) {
    case FigureId::hurst_vs_volume_q1: hurst_vs_volume(results, 1.0, out); break;
    case FigureId::hurst_vs_volume_q2: hurst_vs_volume(results, 2.0, out); break;
    case FigureId::qhq_by_quartile: qhq_by_quartile(results, benchmark, out); break;
    case FigureId::qhq_shuffled_by_quartile: qhq_shuffled(results, benchmark, out); break;
    case FigureId::kurtosis_vs_delta_h: kurtosis_vs(results, surrogate::Measure::delta_h, out); break;
    case FigureId::kurtosis_vs_delta_alpha: kurtosis_vs(results, surrogate::Measure::delta_alpha, out); break;
    }
}

} // namespace hurstlab::figures
