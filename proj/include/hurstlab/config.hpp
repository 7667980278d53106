#pragma once

#include "hurstlab/ghe.hpp"
#include "hurstlab/mfdfa.hpp"
#include "hurstlab/surrogate.hpp"

#include <json.hpp>

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>

namespace hurstlab {

struct PipelineConfig {
    std::filesystem::path input;
    std::filesystem::path output_dir;
    std::uint64_t seed = 0;
    ghe::GheConfig ghe;
    mfdfa::MfdfaConfig mfdfa;
    // base_seed is not read by the pipeline: every ticker gets its own seed
    // derived from `seed`.
    surrogate::SurrogateConfig surrogate;
    bool emit_figures = false;
    bool self_check = false;
    double failure_budget = 0.10; // fraction of tickers allowed to fail
    std::size_t threads = 0;      // 0 = hardware concurrency
};

// Checks everything that can be checked without data: sub-configs, q = 1 and
// q = 2 present in the GHE grid (the tables need them), the budget in [0, 1].
void validate(const PipelineConfig& config);

// Applies `key = value` lines on top of `config`. '#' starts a comment. Grid
// values are either comma lists ("1, 2, 3") or ranges "lo:hi:step".
//
//   seed = 42
//   ghe.q = 0.1:4:0.1
//   mfdfa.scales = 16, 32, 64, 128, 256, 512
//   surrogate.n_shuffles = 1000
//
// Unknown keys and malformed values throw ConfigError naming the line.
void apply_config_text(PipelineConfig& config, std::istream& in);

// Reads a key-value file, or a JSON file holding either a config object or a
// pipeline manifest (its "config" member is used).
void apply_config_file(PipelineConfig& config, const std::filesystem::path& path);

nlohmann::json to_json(const PipelineConfig& config);
PipelineConfig config_from_json(const nlohmann::json& j);

// Grid parsing shared by the config file and the CLI.
std::vector<double> parse_real_list(const std::string& text);
std::vector<std::size_t> parse_size_list(const std::string& text);

} // namespace hurstlab
