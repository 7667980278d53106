#include "hurstlab/ingest.hpp"

#include "hurstlab/errors.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>

namespace hurstlab {

std::string format_date(Date d) {
    const std::chrono::year_month_day ymd{d};
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
    return buf;
}

std::optional<Date> parse_date(std::string_view text) {
    if (text.size() != 10 || text[4] != '-' || text[7] != '-') {
        return std::nullopt;
    }
    auto field = [&](std::size_t pos, std::size_t len) -> std::optional<int> {
        int v = 0;
        const char* first = text.data() + pos;
        const char* last = first + len;
        auto [ptr, ec] = std::from_chars(first, last, v);
        if (ec != std::errc{} || ptr != last) {
            return std::nullopt;
        }
        return v;
    };
    const auto y = field(0, 4);
    const auto m = field(5, 2);
    const auto d = field(8, 2);
    if (!y || !m || !d || *m < 1 || *d < 1) {
        return std::nullopt;
    }
    const std::chrono::year_month_day ymd{std::chrono::year{*y},
                                          std::chrono::month{static_cast<unsigned>(*m)},
                                          std::chrono::day{static_cast<unsigned>(*d)}};
    if (!ymd.ok()) {
        return std::nullopt;
    }
    return Date{ymd};
}

namespace ingest {

namespace {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) {
        out.push_back(trim(field));
    }
    if (!line.empty() && line.back() == ',') {
        out.emplace_back();
    }
    return out;
}

std::optional<double> parse_number(const std::string& s) {
    if (s.empty()) {
        return std::nullopt;
    }
    double v = 0.0;
    const char* first = s.data();
    if (*first == '+') {
        ++first;
    }
    const char* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last || !std::isfinite(v)) {
        return std::nullopt;
    }
    return v;
}

struct Columns {
    int date = -1;
    int price = -1;
    int volume = -1;
    int ticker = -1;
    std::size_t count = 0;
};

Columns parse_header(const std::string& line) {
    Columns cols;
    const auto fields = split(line);
    cols.count = fields.size();
    for (std::size_t i = 0; i < fields.size(); ++i) {
        std::string name = fields[i];
        // tolerate a UTF-8 byte order mark on the first column
        if (i == 0 && name.rfind("\xEF\xBB\xBF", 0) == 0) {
            name.erase(0, 3);
        }
        std::transform(name.begin(), name.end(), name.begin(),
                       [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
        const int idx = static_cast<int>(i);
        if (name == "date") cols.date = idx;
        else if (name == "price") cols.price = idx;
        else if (name == "volume") cols.volume = idx;
        else if (name == "ticker") cols.ticker = idx;
    }
    if (cols.date < 0 || cols.price < 0 || cols.volume < 0) {
        throw MalformedRow(1, "header must contain date,price,volume");
    }
    return cols;
}

struct Row {
    std::size_t line;
    Date date;
    double price;
    double volume;
};

Row parse_row(const std::vector<std::string>& fields, const Columns& cols, std::size_t line) {
    if (fields.size() != cols.count) {
        throw MalformedRow(line, "expected " + std::to_string(cols.count) + " fields, got " +
                                     std::to_string(fields.size()));
    }
    const auto date = parse_date(fields[static_cast<std::size_t>(cols.date)]);
    if (!date) {
        throw MalformedRow(line, "bad date '" + fields[static_cast<std::size_t>(cols.date)] + "'");
    }
    const auto price = parse_number(fields[static_cast<std::size_t>(cols.price)]);
    if (!price) {
        throw MalformedRow(line, "bad price");
    }
    if (*price <= 0.0) {
        throw NonPositivePrice(line);
    }
    const auto volume = parse_number(fields[static_cast<std::size_t>(cols.volume)]);
    if (!volume || *volume < 0.0) {
        throw MalformedRow(line, "bad volume");
    }
    return Row{line, *date, *price, *volume};
}

RawSeries assemble(std::string ticker, std::vector<Row> rows) {
    std::stable_sort(rows.begin(), rows.end(),
                     [](const Row& a, const Row& b) { return a.date < b.date; });
    RawSeries series;
    series.ticker = std::move(ticker);
    series.dates.reserve(rows.size());
    series.prices.reserve(rows.size());
    series.volumes.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i > 0 && rows[i].date == rows[i - 1].date) {
            const std::size_t line = std::max(rows[i].line, rows[i - 1].line);
            throw DuplicateDate(line, format_date(rows[i].date));
        }
        series.dates.push_back(rows[i].date);
        series.prices.push_back(rows[i].price);
        series.volumes.push_back(rows[i].volume);
    }
    return series;
}

template <typename OnRow>
void read_rows(std::istream& in, bool want_ticker, OnRow&& on_row) {
    std::string line;
    if (!std::getline(in, line)) {
        throw MalformedRow(1, "missing header");
    }
    const Columns cols = parse_header(line);
    if (want_ticker && cols.ticker < 0) {
        throw MalformedRow(1, "long-format file needs a ticker column");
    }
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) {
            continue;
        }
        const auto fields = split(line);
        Row row = parse_row(fields, cols, line_no);
        std::string ticker = cols.ticker >= 0 ? fields[static_cast<std::size_t>(cols.ticker)] : "";
        if (want_ticker && ticker.empty()) {
            throw MalformedRow(line_no, "empty ticker");
        }
        on_row(std::move(ticker), row);
    }
}

} // namespace

RawSeries parse_csv(std::istream& in, std::string ticker) {
    std::vector<Row> rows;
    read_rows(in, false, [&](std::string, const Row& row) { rows.push_back(row); });
    return assemble(std::move(ticker), std::move(rows));
}

RawSeries load_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw DataError("cannot open " + path.string());
    }
    return parse_csv(in, path.stem().string());
}

std::vector<RawSeries> parse_long_csv(std::istream& in) {
    std::map<std::string, std::vector<Row>> by_ticker;
    read_rows(in, true, [&](std::string ticker, const Row& row) {
        by_ticker[std::move(ticker)].push_back(row);
    });
    std::vector<RawSeries> out;
    out.reserve(by_ticker.size());
    for (auto& [ticker, rows] : by_ticker) {
        out.push_back(assemble(ticker, std::move(rows)));
    }
    return out;
}

std::vector<RawSeries> load_universe(const std::filesystem::path& input) {
    namespace fs = std::filesystem;
    std::vector<RawSeries> out;
    if (fs::is_directory(input)) {
        std::vector<fs::path> files;
        for (const auto& entry : fs::directory_iterator(input)) {
            if (entry.is_regular_file() && entry.path().extension() == ".csv") {
                files.push_back(entry.path());
            }
        }
        std::sort(files.begin(), files.end());
        for (const auto& f : files) {
            out.push_back(load_csv(f));
        }
    } else {
        std::ifstream in(input);
        if (!in) {
            throw DataError("cannot open " + input.string());
        }
        out = parse_long_csv(in);
    }
    std::sort(out.begin(), out.end(),
              [](const RawSeries& a, const RawSeries& b) { return a.ticker < b.ticker; });
    return out;
}

RawSeries validate_continuity(RawSeries series) {
    if (series.dates.empty()) {
        throw DataError("series '" + series.ticker + "' is empty");
    }
    std::vector<std::string> gaps;
    for (std::size_t i = 1; i < series.dates.size(); ++i) {
        for (Date d = series.dates[i - 1] + std::chrono::days{1}; d < series.dates[i];
             d += std::chrono::days{1}) {
            gaps.push_back(format_date(d));
        }
    }
    if (!gaps.empty()) {
        throw MissingDays(std::move(gaps));
    }
    return series;
}

ReturnSeries log_returns(const RawSeries& series) {
    if (series.prices.size() < 2) {
        throw TooShort("series '" + series.ticker + "' needs at least two prices");
    }
    ReturnSeries out;
    out.ticker = series.ticker;
    out.values.reserve(series.prices.size() - 1);
    for (std::size_t t = 1; t < series.prices.size(); ++t) {
        if (!(series.prices[t] > 0.0) || !(series.prices[t - 1] > 0.0)) {
            throw NonPositivePrice(t + 1);
        }
        out.values.push_back(100.0 * std::log(series.prices[t] / series.prices[t - 1]));
    }
    if (series.dates.size() == series.prices.size()) {
        out.dates.assign(series.dates.begin() + 1, series.dates.end());
    }
    return out;
}

std::vector<QuartileAssignment> assign_quartiles(std::span<const RawSeries> universe) {
    if (universe.empty()) {
        throw DataError("empty universe");
    }
    if (universe.size() < 4) {
        throw DataError("quartile assignment needs at least 4 series, got " +
                        std::to_string(universe.size()));
    }
    std::vector<QuartileAssignment> out;
    out.reserve(universe.size());
    for (const auto& s : universe) {
        if (s.volumes.empty()) {
            throw DataError("series '" + s.ticker + "' has no volume data");
        }
        const double mean =
            std::accumulate(s.volumes.begin(), s.volumes.end(), 0.0) / static_cast<double>(s.volumes.size());
        if (!(mean > 0.0)) {
            throw DataError("series '" + s.ticker + "' has non-positive average volume");
        }
        out.push_back({s.ticker, std::log(mean), 0});
    }
    std::sort(out.begin(), out.end(), [](const QuartileAssignment& a, const QuartileAssignment& b) {
        if (a.mean_log_volume != b.mean_log_volume) {
            return a.mean_log_volume > b.mean_log_volume;
        }
        return a.ticker < b.ticker;
    });
    const std::size_t base = out.size() / 4;
    const std::size_t extra = out.size() % 4;
    std::size_t pos = 0;
    for (int q = 0; q < 4; ++q) {
        const std::size_t size = base + (static_cast<std::size_t>(q) < extra ? 1 : 0);
        for (std::size_t k = 0; k < size; ++k) {
            out[pos++].quartile = q + 1;
        }
    }
    return out;
}

void write_csv(std::ostream& out, const RawSeries& series) {
    out << "date,price,volume\n";
    char buf[64];
    for (std::size_t i = 0; i < series.size(); ++i) {
        out << format_date(series.dates[i]) << ',';
        std::snprintf(buf, sizeof buf, "%.17g", series.prices[i]);
        out << buf << ',';
        std::snprintf(buf, sizeof buf, "%.17g", series.volumes[i]);
        out << buf << '\n';
    }
}

} // namespace ingest
} // namespace hurstlab
