#pragma once

#include "hurstlab/ingest.hpp"
#include "hurstlab/mfdfa.hpp"
#include "hurstlab/series.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hurstlab::surrogate {

struct SurrogateConfig {
    std::size_t n_shuffles = 1000;
    double ci_low = 0.025;
    double ci_high = 0.975;
    std::uint64_t base_seed = 0;
    std::size_t threads = 0; // 0 = hardware concurrency; never affects results
};

void validate(const SurrogateConfig& config);

enum class Measure { delta_h, delta_alpha };

std::string_view to_string(Measure measure);
Measure parse_measure(std::string_view name);

struct SurrogateTestReport {
    std::string ticker;
    Measure measure = Measure::delta_h;
    double original = 0.0;
    double shuffled_mean = 0.0;
    double cl_low = 0.0;
    double cl_high = 0.0;
    bool flagged = false; // original outside [cl_low, cl_high]
    std::size_t surrogates = 0;
};

// Seed of the index-th surrogate (1-based); each surrogate can be rebuilt on
// its own from (base_seed, index).
std::uint64_t surrogate_seed(std::uint64_t base_seed, std::size_t index);

// Uniform random permutation (Fisher-Yates). The output's seed field records
// `seed`.
ReturnSeries shuffle(const ReturnSeries& series, std::uint64_t seed);

// Summarizes an ensemble of surrogate values: mean, linear-interpolation
// percentiles at ci_low/ci_high, and the exclusion flag.
SurrogateTestReport summarize(std::string ticker, Measure measure, double original,
                              std::vector<double> ensemble, const SurrogateConfig& config);

struct SurrogateOutcome {
    SurrogateTestReport delta_h;
    SurrogateTestReport delta_alpha;
    mfdfa::MfdfaResult original;
    // Ensemble averages over the successful surrogates, aligned with the q grid.
    std::vector<double> shuffled_mean_h_of_q;
    std::vector<double> shuffled_mean_tau_of_q;
    std::size_t failed_surrogates = 0;
};

// Runs MF-DFA on the series and on n_shuffles seeded permutations. Throws
// DataError when more than 1% of the surrogates fail.
SurrogateOutcome surrogate_test(const ReturnSeries& series, const SurrogateConfig& config,
                                const mfdfa::MfdfaConfig& mfdfa_config);

struct QuartileRow {
    int quartile = 0;
    std::size_t members = 0;
    double delta_h = 0.0;
    double delta_h_shuffled = 0.0;
    double delta_alpha = 0.0;
    double delta_alpha_shuffled = 0.0;
    std::size_t flagged_delta_h = 0;
    std::size_t flagged_delta_alpha = 0;
};

struct QuartileTable {
    std::vector<QuartileRow> rows; // ascending quartile, only non-empty ones
    std::size_t members = 0;
    std::size_t flagged_delta_h = 0;
    std::size_t flagged_delta_alpha = 0;

    double flag_rate_delta_h() const { return members ? double(flagged_delta_h) / double(members) : 0.0; }
    double flag_rate_delta_alpha() const {
        return members ? double(flagged_delta_alpha) / double(members) : 0.0;
    }
};

// Quartile means of the original and shuffled-mean measures plus flag counts.
// `reports` holds one delta_h and one delta_alpha report per ticker; throws
// DataError when a ticker has no assignment or lacks either measure.
QuartileTable aggregate_by_quartile(std::span<const SurrogateTestReport> reports,
                                    std::span<const ingest::QuartileAssignment> assignments);

} // namespace hurstlab::surrogate
