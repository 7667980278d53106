#pragma once

#include "hurstlab/ghe.hpp"
#include "hurstlab/stats.hpp"
#include "hurstlab/surrogate.hpp"

#include <cstdint>
#include <string>

namespace hurstlab {

// Everything the pipeline computes for one ticker. Aggregate tables and
// figure files are built from these records only.
struct TickerResult {
    std::string ticker;
    int quartile = 0;
    double mean_log_volume = 0.0;
    std::uint64_t seed = 0; // surrogate base seed
    stats::DescriptiveStats stats;
    ghe::GheResult ghe;
    surrogate::SurrogateOutcome surrogate; // includes the MF-DFA result of the original
};

// Simulated H = 0.5 series of the universe's length, analyzed like a ticker.
struct Benchmark {
    std::uint64_t seed = 0;
    std::size_t n = 0;
    ghe::GheResult ghe;
    surrogate::SurrogateOutcome surrogate;
};

} // namespace hurstlab
