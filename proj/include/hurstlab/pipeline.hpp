#pragma once

#include "hurstlab/config.hpp"
#include "hurstlab/ingest.hpp"
#include "hurstlab/results.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace hurstlab {

// Value of the "schema" field in every JSON file the pipeline writes.
inline constexpr std::string_view kSchemaVersion = "hurstlab.report/1";

struct TickerFailure {
    std::string ticker;
    std::string error;
};

struct PipelineReport {
    std::filesystem::path output_dir;
    std::vector<ingest::QuartileAssignment> assignments; // rank order
    std::vector<TickerResult> results;                   // successful tickers, by ticker
    std::vector<TickerFailure> failures;                 // by ticker
    Benchmark benchmark;                                 // filled when figures are emitted
    surrogate::QuartileTable table;
    std::vector<std::string> files; // written paths relative to output_dir, sorted
};

// Surrogate base seed of a ticker: the pipeline seed mixed with a hash of the
// ticker symbol, so adding or removing tickers leaves the others unchanged.
std::uint64_t ticker_seed(std::uint64_t pipeline_seed, std::string_view ticker);

// Seeds of the simulated H = 0.5 benchmark series and of its surrogates.
std::uint64_t benchmark_seed(std::uint64_t pipeline_seed);
std::uint64_t benchmark_surrogate_seed(std::uint64_t pipeline_seed);

// Stats, GHE, MF-DFA and the surrogate test for one series. Throws DataError
// (or ConfigError for length-dependent settings) on failure.
TickerResult analyze_ticker(const RawSeries& raw, const ingest::QuartileAssignment& assignment,
                            const PipelineConfig& config, std::size_t surrogate_threads);

// End-to-end run; see README for the output layout. Per-ticker failures are
// isolated and listed in failures.csv. Throws BudgetExceeded, after writing
// the failure list and the manifest, when more than config.failure_budget of
// the tickers fail. `log` receives one line per failed ticker.
PipelineReport run_pipeline(const PipelineConfig& config, std::ostream* log = nullptr);

// Rebuilds the universe tables from the per-ticker JSON records in
// output_dir and compares them with the emitted table JSON. Throws DataError
// on any difference larger than `tolerance` (relative to max(1, |value|)).
void self_check(const std::filesystem::path& output_dir, double tolerance = 1e-12);

nlohmann::json to_json(const stats::DescriptiveStats& s);
nlohmann::json to_json(const ghe::GheResult& r);
nlohmann::json to_json(const mfdfa::MfdfaResult& r);
nlohmann::json to_json(const surrogate::SurrogateTestReport& r);
nlohmann::json to_json(const TickerResult& r);

} // namespace hurstlab
