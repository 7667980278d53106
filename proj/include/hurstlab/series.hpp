#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hurstlab {

using Date = std::chrono::sys_days;

// Daily price/volume observations for one asset.
struct RawSeries {
    std::string ticker;
    std::vector<Date> dates;
    std::vector<double> prices;
    std::vector<double> volumes;

    std::size_t size() const noexcept { return prices.size(); }
};

// Percent log returns, 100 * ln(P_t / P_{t-1}). `dates` holds the closing date
// of each return when the series came from market data and is empty for
// synthetic series. `seed` is set when the values were produced by a seeded
// generator or permutation.
struct ReturnSeries {
    std::string ticker;
    std::vector<double> values;
    std::vector<Date> dates;
    std::optional<std::uint64_t> seed;

    std::size_t size() const noexcept { return values.size(); }
};

std::string format_date(Date d);

// Parses YYYY-MM-DD. Returns nullopt for anything else, including invalid
// calendar days such as 2019-02-29.
std::optional<Date> parse_date(std::string_view text);

} // namespace hurstlab
