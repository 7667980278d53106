#include "hurstlab/surrogate.hpp"

#include "hurstlab/errors.hpp"
#include "hurstlab/parallel.hpp"
#include "hurstlab/rng.hpp"
#include "hurstlab/stats.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <utility>

namespace hurstlab::surrogate {

void validate(const SurrogateConfig& config) {
    if (config.n_shuffles < 100) {
        throw ConfigError("surrogate test needs at least 100 shuffles");
    }
    if (!(config.ci_low > 0.0 && config.ci_low < config.ci_high && config.ci_high < 1.0)) {
        throw ConfigError("confidence limits must satisfy 0 < low < high < 1");
    }
}

std::string_view to_string(Measure measure) {
    return measure == Measure::delta_h ? "delta_h" : "delta_alpha";
}

Measure parse_measure(std::string_view name) {
    if (name == "delta_h") return Measure::delta_h;
    if (name == "delta_alpha") return Measure::delta_alpha;
    throw ConfigError("unknown measure '" + std::string(name) + "'");
}

std::uint64_t surrogate_seed(std::uint64_t base_seed, std::size_t index) {
    return derive_seed(base_seed, index);
}

ReturnSeries shuffle(const ReturnSeries& series, std::uint64_t seed) {
    ReturnSeries out;
    out.ticker = series.ticker;
    out.values = series.values;
    out.seed = seed;
    Rng rng(seed);
    for (std::size_t i = out.values.size(); i > 1; --i) {
        const auto j = static_cast<std::size_t>(rng.below(i));
        std::swap(out.values[i - 1], out.values[j]);
    }
    return out;
}

SurrogateTestReport summarize(std::string ticker, Measure measure, double original,
                              std::vector<double> ensemble, const SurrogateConfig& config) {
    if (ensemble.empty()) {
        throw DataError("empty surrogate ensemble");
    }
    SurrogateTestReport r;
    r.ticker = std::move(ticker);
    r.measure = measure;
    r.original = original;
    r.surrogates = ensemble.size();
    r.shuffled_mean = stats::mean(ensemble);
    std::sort(ensemble.begin(), ensemble.end());
    r.cl_low = stats::quantile_sorted(ensemble, config.ci_low);
    r.cl_high = stats::quantile_sorted(ensemble, config.ci_high);
    r.flagged = original < r.cl_low || original > r.cl_high;
    return r;
}

SurrogateOutcome surrogate_test(const ReturnSeries& series, const SurrogateConfig& config,
                                const mfdfa::MfdfaConfig& mfdfa_config) {
    validate(config);
    SurrogateOutcome out;
    out.original = mfdfa::analyze(series, mfdfa_config);

    struct Slot {
        double delta_h;
        double delta_alpha;
        std::vector<double> h_of_q;
    };
    std::vector<std::optional<Slot>> slots(config.n_shuffles);
    std::vector<std::string> errors(config.n_shuffles);
    parallel_for(config.n_shuffles, config.threads, [&](std::size_t i) {
        const auto shuffled = shuffle(series, surrogate_seed(config.base_seed, i + 1));
        try {
            auto r = mfdfa::analyze(shuffled, mfdfa_config);
            slots[i] = Slot{r.delta_h, r.delta_alpha, std::move(r.h_of_q)};
        } catch (const DataError& e) {
            errors[i] = e.what();
        }
    });

    const std::size_t nq = out.original.q_grid.size();
    std::vector<double> dh;
    std::vector<double> da;
    std::vector<double> h_sum(nq, 0.0);
    std::string first_error;
    for (std::size_t i = 0; i < slots.size(); ++i) {
        if (!slots[i]) {
            ++out.failed_surrogates;
            if (first_error.empty()) {
                first_error = errors[i];
            }
            continue;
        }
        dh.push_back(slots[i]->delta_h);
        da.push_back(slots[i]->delta_alpha);
        for (std::size_t k = 0; k < nq; ++k) {
            h_sum[k] += slots[i]->h_of_q[k];
        }
    }
    if (out.failed_surrogates * 100 > config.n_shuffles) {
        throw DataError("MF-DFA failed on " + std::to_string(out.failed_surrogates) + " of " +
                        std::to_string(config.n_shuffles) + " surrogates of '" + series.ticker +
                        "': " + first_error);
    }
    const double used = static_cast<double>(dh.size());
    out.shuffled_mean_h_of_q.resize(nq);
    for (std::size_t k = 0; k < nq; ++k) {
        out.shuffled_mean_h_of_q[k] = h_sum[k] / used;
    }
    out.shuffled_mean_tau_of_q = mfdfa::mass_exponent(out.original.q_grid, out.shuffled_mean_h_of_q);
    out.delta_h = summarize(series.ticker, Measure::delta_h, out.original.delta_h, std::move(dh), config);
    out.delta_alpha =
        summarize(series.ticker, Measure::delta_alpha, out.original.delta_alpha, std::move(da), config);
    return out;
}

QuartileTable aggregate_by_quartile(std::span<const SurrogateTestReport> reports,
                                    std::span<const ingest::QuartileAssignment> assignments) {
    std::map<std::string, int> quartile_of;
    for (const auto& a : assignments) {
        quartile_of[a.ticker] = a.quartile;
    }
    struct Pair {
        const SurrogateTestReport* h = nullptr;
        const SurrogateTestReport* alpha = nullptr;
    };
    std::map<std::string, Pair> by_ticker;
    for (const auto& r : reports) {
        auto& p = by_ticker[r.ticker];
        (r.measure == Measure::delta_h ? p.h : p.alpha) = &r;
    }
    std::map<int, QuartileRow> rows;
    QuartileTable table;
    for (const auto& [ticker, p] : by_ticker) {
        const auto it = quartile_of.find(ticker);
        if (it == quartile_of.end()) {
            throw DataError("no quartile assignment for '" + ticker + "'");
        }
        if (!p.h || !p.alpha) {
            throw DataError("'" + ticker + "' needs both delta_h and delta_alpha reports");
        }
        auto& row = rows[it->second];
        row.quartile = it->second;
        ++row.members;
        // Running means: exact when all members carry the same value.
        const double k = static_cast<double>(row.members);
        row.delta_h += (p.h->original - row.delta_h) / k;
        row.delta_h_shuffled += (p.h->shuffled_mean - row.delta_h_shuffled) / k;
        row.delta_alpha += (p.alpha->original - row.delta_alpha) / k;
        row.delta_alpha_shuffled += (p.alpha->shuffled_mean - row.delta_alpha_shuffled) / k;
        row.flagged_delta_h += p.h->flagged ? 1 : 0;
        row.flagged_delta_alpha += p.alpha->flagged ? 1 : 0;
    }
    for (const auto& [q, row] : rows) {
        table.members += row.members;
        table.flagged_delta_h += row.flagged_delta_h;
        table.flagged_delta_alpha += row.flagged_delta_alpha;
        table.rows.push_back(row);
    }
    return table;
}

} // namespace hurstlab::surrogate
