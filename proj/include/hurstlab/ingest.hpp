#pragma once

#include "hurstlab/series.hpp"

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace hurstlab::ingest {

// Reads a `date,price,volume` CSV. The ticker is the file stem. Rows are
// re-sorted by date when the file is out of order.
RawSeries load_csv(const std::filesystem::path& path);

// Same as load_csv on an already-open stream. Line numbers in errors are
// 1-based and count the header.
RawSeries parse_csv(std::istream& in, std::string ticker);

// Long-format CSV with a `ticker` column; returns one series per ticker,
// sorted by ticker.
std::vector<RawSeries> parse_long_csv(std::istream& in);

// A directory of per-ticker CSV files, or a single long-format CSV file.
// Returned series are sorted by ticker.
std::vector<RawSeries> load_universe(const std::filesystem::path& input);

// Throws MissingDays unless the dates form one contiguous daily range.
RawSeries validate_continuity(RawSeries series);

ReturnSeries log_returns(const RawSeries& series);

struct QuartileAssignment {
    std::string ticker;
    double mean_log_volume = 0.0; // natural log of the arithmetic mean daily volume
    int quartile = 0;             // 1 = highest volume
};

// Ranks by mean_log_volume descending (ties by ticker) and splits into four
// groups; when the universe size is not divisible by four the extra members
// go to the highest-volume quartiles first. Output is in rank order.
std::vector<QuartileAssignment> assign_quartiles(std::span<const RawSeries> universe);

void write_csv(std::ostream& out, const RawSeries& series);

} // namespace hurstlab::ingest
