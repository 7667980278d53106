#include "hurstlab/pipeline.hpp"

#include "csv_format.hpp"
#include "hurstlab/errors.hpp"
#include "hurstlab/figures.hpp"
#include "hurstlab/parallel.hpp"
#include "hurstlab/rng.hpp"
#include "hurstlab/synth.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <cctype>
#include <map>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>

namespace hurstlab {

using detail::csv_field;
using detail::num;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr const char* kStatColumns[] = {"Obs.",     "Mean",     "Median",   "Min",        "Max",
                                        "Std. Dev.", "Skewness", "Kurtosis", "Jarque-Bera"};

std::vector<double> stat_values(const stats::DescriptiveStats& s) {
    return {static_cast<double>(s.n), s.mean, s.median, s.min, s.max, s.std_dev, s.skewness, s.kurtosis,
            s.jarque_bera};
}

// NaN has no JSON literal; it is written as null and read back as NaN.
double as_real(const json& j) { return j.is_null() ? std::nan("") : j.get<double>(); }

std::vector<double> as_reals(const json& j) {
    std::vector<double> out;
    for (const auto& v : j) out.push_back(as_real(v));
    return out;
}

// Ticker symbols become file names; anything outside [A-Za-z0-9._-] is
// replaced so a symbol cannot escape the output directory.
std::string file_stem(const std::string& ticker) {
    std::string s = ticker;
    for (char& c : s) {
        const bool ok = std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '_' || c == '-';
        if (!ok) c = '_';
    }
    if (s.empty() || s == "." || s == "..") s = "_" + s;
    return s;
}

class Writer {
public:
    explicit Writer(fs::path root) : root_(std::move(root)) {}

    // Writes to a temporary sibling and renames, so a file is either absent
    // or complete.
    void write(const std::string& rel, const std::string& content) {
        const fs::path target = root_ / rel;
        fs::create_directories(target.parent_path());
        const fs::path tmp = target.string() + ".tmp";
        {
            std::ofstream out(tmp, std::ios::binary);
            out << content;
            if (!out) {
                throw std::runtime_error("cannot write " + tmp.string());
            }
        }
        fs::rename(tmp, target);
        std::lock_guard lock(mutex_);
        files_.push_back(rel);
    }

    void write_json(const std::string& rel, const json& j) { write(rel, j.dump(2) + "\n"); }

    std::vector<std::string> files() const {
        auto f = files_;
        std::sort(f.begin(), f.end());
        return f;
    }

private:
    fs::path root_;
    std::mutex mutex_;
    std::vector<std::string> files_;
};

struct Table1 {
    stats::DescriptiveStats log_volume;
    stats::DescriptiveStats h1;
    stats::DescriptiveStats h2;
};

Table1 table1_from(const std::vector<double>& logvol, const std::vector<double>& h1, const std::vector<double>& h2) {
    return {stats::describe(logvol), stats::describe(h1), stats::describe(h2)};
}

json table1_json(const Table1& t, std::uint64_t seed) {
    return {{"schema", kSchemaVersion},
            {"seed", seed},
            {"columns", {"Log vol.", "q=1", "q=2"}},
            {"log_volume", to_json(t.log_volume)},
            {"h_q1", to_json(t.h1)},
            {"h_q2", to_json(t.h2)}};
}

std::string table1_csv(const Table1& t) {
    std::ostringstream out;
    out << "Statistic,Log vol.,q=1,q=2\n";
    const auto a = stat_values(t.log_volume);
    const auto b = stat_values(t.h1);
    const auto c = stat_values(t.h2);
    for (std::size_t i = 0; i < a.size(); ++i) {
        out << kStatColumns[i] << ',' << num(a[i]) << ',' << num(b[i]) << ',' << num(c[i]) << '\n';
    }
    return out.str();
}

json table2_json(const surrogate::QuartileTable& t, std::uint64_t seed) {
    json rows = json::array();
    for (const auto& r : t.rows) {
        rows.push_back({{"quartile", r.quartile},
                        {"members", r.members},
                        {"delta_h", r.delta_h},
                        {"delta_h_shuffled", r.delta_h_shuffled},
                        {"delta_alpha", r.delta_alpha},
                        {"delta_alpha_shuffled", r.delta_alpha_shuffled}});
    }
    return {{"schema", kSchemaVersion}, {"seed", seed}, {"rows", rows}};
}

std::string table2_csv(const surrogate::QuartileTable& t) {
    std::ostringstream out;
    out << "Quartile,ΔH,ΔH_shuffled,Δα,Δα_shuffled\n";
    for (const auto& r : t.rows) {
        out << "Quartile " << r.quartile << ',' << num(r.delta_h) << ',' << num(r.delta_h_shuffled) << ','
            << num(r.delta_alpha) << ',' << num(r.delta_alpha_shuffled) << '\n';
    }
    return out.str();
}

json flag_rates_json(const surrogate::QuartileTable& t, std::uint64_t seed) {
    json rows = json::array();
    for (const auto& r : t.rows) {
        const double m = static_cast<double>(r.members);
        rows.push_back({{"scope", "Quartile " + std::to_string(r.quartile)},
                        {"members", r.members},
                        {"flagged_delta_h", r.flagged_delta_h},
                        {"flagged_delta_alpha", r.flagged_delta_alpha},
                        {"rate_delta_h", static_cast<double>(r.flagged_delta_h) / m},
                        {"rate_delta_alpha", static_cast<double>(r.flagged_delta_alpha) / m}});
    }
    rows.push_back({{"scope", "All"},
                    {"members", t.members},
                    {"flagged_delta_h", t.flagged_delta_h},
                    {"flagged_delta_alpha", t.flagged_delta_alpha},
                    {"rate_delta_h", t.flag_rate_delta_h()},
                    {"rate_delta_alpha", t.flag_rate_delta_alpha()}});
    return {{"schema", kSchemaVersion}, {"seed", seed}, {"rows", rows}};
}

std::string flag_rates_csv(const json& j) {
    std::ostringstream out;
    out << "Scope,Members,Flagged ΔH,Flagged Δα,Rate ΔH,Rate Δα\n";
    for (const auto& r : j.at("rows")) {
        out << r.at("scope").get<std::string>() << ',' << r.at("members").get<std::size_t>() << ','
            << r.at("flagged_delta_h").get<std::size_t>() << ',' << r.at("flagged_delta_alpha").get<std::size_t>()
            << ',' << num(r.at("rate_delta_h").get<double>()) << ',' << num(r.at("rate_delta_alpha").get<double>())
            << '\n';
    }
    return out.str();
}

std::string cl_label(double p) {
    std::ostringstream s;
    s << "CL_" << p;
    return s.str();
}

surrogate::SurrogateTestReport report_from_json(const std::string& ticker, const json& j) {
    surrogate::SurrogateTestReport r;
    r.ticker = ticker;
    r.measure = surrogate::parse_measure(j.at("measure").get<std::string>());
    r.original = as_real(j.at("original"));
    r.shuffled_mean = as_real(j.at("shuffled_mean"));
    r.cl_low = as_real(j.at("cl_low"));
    r.cl_high = as_real(j.at("cl_high"));
    r.flagged = j.at("flagged").get<bool>();
    r.surrogates = j.at("surrogates").get<std::size_t>();
    return r;
}

double h_at_or_throw(const ghe::GheResult& g, double q, const std::string& ticker) {
    const double h = g.h_at(q);
    if (!std::isfinite(h)) {
        throw DataError("GHE H(" + num(q) + ") failed for '" + ticker + "'");
    }
    return h;
}

bool close(double a, double b, double tol) {
    if (std::isnan(a) || std::isnan(b)) return std::isnan(a) && std::isnan(b);
    return std::abs(a - b) <= tol * std::max(1.0, std::abs(a));
}

void compare(const json& expected, const json& actual, double tol, const std::string& where) {
    if (expected.is_number() || actual.is_number() || expected.is_null() || actual.is_null()) {
        if (!close(as_real(expected), as_real(actual), tol)) {
            throw DataError("self-check mismatch at " + where + ": " + expected.dump() + " vs " + actual.dump());
        }
        return;
    }
    if (expected.is_object()) {
        for (const auto& [k, v] : expected.items()) {
            if (!actual.contains(k)) throw DataError("self-check: missing " + where + "/" + k);
            compare(v, actual.at(k), tol, where + "/" + k);
        }
        return;
    }
    if (expected.is_array()) {
        if (expected.size() != actual.size()) throw DataError("self-check: length differs at " + where);
        for (std::size_t i = 0; i < expected.size(); ++i) {
            compare(expected[i], actual[i], tol, where + "[" + std::to_string(i) + "]");
        }
        return;
    }
    if (expected != actual) {
        throw DataError("self-check mismatch at " + where);
    }
}

json read_json(const fs::path& p) {
    std::ifstream in(p);
    if (!in) throw DataError("self-check: cannot read " + p.string());
    return json::parse(in);
}

} // namespace

json to_json(const stats::DescriptiveStats& s) {
    return {{"n", s.n},
            {"mean", s.mean},
            {"median", s.median},
            {"min", s.min},
            {"max", s.max},
            {"std_dev", s.std_dev},
            {"skewness", s.skewness},
            {"kurtosis", s.kurtosis},
            {"jarque_bera", s.jarque_bera}};
}

json to_json(const ghe::GheResult& r) {
    return {{"q", r.q_grid},           {"h", r.h_of_q},
            {"h_stderr", r.h_stderr},  {"qhq", r.qhq},
            {"q_errors", r.q_errors},  {"tau_max_min", r.tau_max_min},
            {"tau_max_max", r.tau_max_max}};
}

json to_json(const mfdfa::MfdfaResult& r) {
    return {{"q", r.q_grid},
            {"scales", r.scales},
            {"detrend_order", r.detrend_order},
            {"fluctuation", r.fluctuation},
            {"h", r.h_of_q},
            {"fit_r2", r.fit_r2},
            {"tau", r.tau_of_q},
            {"alpha", r.alpha},
            {"f_alpha", r.f_alpha},
            {"delta_h", r.delta_h},
            {"delta_alpha", r.delta_alpha},
            {"zero_variance_segments", r.zero_variance_segments},
            {"warnings", r.warnings}};
}

json to_json(const surrogate::SurrogateTestReport& r) {
    return {{"measure", surrogate::to_string(r.measure)},
            {"original", r.original},
            {"shuffled_mean", r.shuffled_mean},
            {"cl_low", r.cl_low},
            {"cl_high", r.cl_high},
            {"flagged", r.flagged},
            {"surrogates", r.surrogates}};
}

json to_json(const TickerResult& r) {
    const auto& s = r.surrogate;
    return {{"schema", kSchemaVersion},
            {"ticker", r.ticker},
            {"quartile", r.quartile},
            {"mean_log_volume", r.mean_log_volume},
            {"surrogate_seed", r.seed},
            {"stats", to_json(r.stats)},
            {"ghe", to_json(r.ghe)},
            {"mfdfa", to_json(s.original)},
            {"surrogate",
             {{"failed", s.failed_surrogates},
              {"shuffled_mean_h", s.shuffled_mean_h_of_q},
              {"shuffled_mean_tau", s.shuffled_mean_tau_of_q},
              {"delta_h", to_json(s.delta_h)},
              {"delta_alpha", to_json(s.delta_alpha)}}}};
}

std::uint64_t ticker_seed(std::uint64_t pipeline_seed, std::string_view ticker) {
    return derive_seed(pipeline_seed, hash_string(ticker));
}

std::uint64_t benchmark_seed(std::uint64_t pipeline_seed) { return derive_seed(pipeline_seed, 0); }

std::uint64_t benchmark_surrogate_seed(std::uint64_t pipeline_seed) { return derive_seed(pipeline_seed, 1); }

TickerResult analyze_ticker(const RawSeries& raw, const ingest::QuartileAssignment& assignment,
                            const PipelineConfig& config, std::size_t surrogate_threads) {
    TickerResult r;
    r.ticker = raw.ticker;
    r.quartile = assignment.quartile;
    r.mean_log_volume = assignment.mean_log_volume;
    r.seed = ticker_seed(config.seed, raw.ticker);

    const auto returns = ingest::log_returns(ingest::validate_continuity(raw));
    r.stats = stats::describe(returns);
    r.ghe = ghe::estimate_hurst(returns, config.ghe);
    h_at_or_throw(r.ghe, 1.0, r.ticker);
    h_at_or_throw(r.ghe, 2.0, r.ticker);

    auto sc = config.surrogate;
    sc.base_seed = r.seed;
    sc.threads = surrogate_threads;
    r.surrogate = surrogate::surrogate_test(returns, sc, config.mfdfa);
    return r;
}

PipelineReport run_pipeline(const PipelineConfig& config, std::ostream* log) {
    validate(config);
    if (config.output_dir.empty()) {
        throw ConfigError("no output directory given");
    }
    if (config.input.empty()) {
        throw ConfigError("no input given");
    }
    fs::create_directories(config.output_dir);
    Writer writer(config.output_dir);

    PipelineReport report;
    report.output_dir = config.output_dir;
    const auto universe = ingest::load_universe(config.input);
    if (universe.size() < 4) {
        throw DataError("the pipeline needs at least 4 series, got " + std::to_string(universe.size()));
    }
    report.assignments = ingest::assign_quartiles(universe);
    std::map<std::string, ingest::QuartileAssignment> assignment_of;
    for (const auto& a : report.assignments) {
        assignment_of[a.ticker] = a;
    }

    std::vector<std::optional<TickerResult>> slots(universe.size());
    std::vector<std::string> errors(universe.size());
    parallel_for(universe.size(), config.threads, [&](std::size_t i) {
        const auto& raw = universe[i];
        try {
            slots[i] = analyze_ticker(raw, assignment_of.at(raw.ticker), config, 1);
            writer.write_json("tickers/" + file_stem(raw.ticker) + ".json", to_json(*slots[i]));
        } catch (const DataError& e) {
            errors[i] = e.what();
        } catch (const ConfigError& e) {
            errors[i] = e.what();
        }
    });

    for (std::size_t i = 0; i < universe.size(); ++i) {
        if (slots[i]) {
            report.results.push_back(std::move(*slots[i]));
        } else {
            report.failures.push_back({universe[i].ticker, errors[i]});
            if (log) {
                *log << "ticker " << universe[i].ticker << " failed: " << errors[i] << '\n';
            }
        }
    }

    {
        std::ostringstream csv;
        csv << "Crypto,Error\n";
        json rows = json::array();
        for (const auto& f : report.failures) {
            csv << csv_field(f.ticker) << ',' << csv_field(f.error) << '\n';
            rows.push_back({{"ticker", f.ticker}, {"error", f.error}});
        }
        writer.write("failures.csv", csv.str());
        writer.write_json("failures.json", {{"schema", kSchemaVersion}, {"seed", config.seed}, {"failures", rows}});
    }

    const double failed_fraction =
        static_cast<double>(report.failures.size()) / static_cast<double>(universe.size());
    const bool over_budget = failed_fraction > config.failure_budget || report.results.size() < 4;

    json universe_json = json::array();
    for (const auto& raw : universe) {
        const auto& a = assignment_of.at(raw.ticker);
        const auto it = std::find_if(report.failures.begin(), report.failures.end(),
                                     [&](const TickerFailure& f) { return f.ticker == raw.ticker; });
        json entry = {{"ticker", raw.ticker},
                      {"quartile", a.quartile},
                      {"mean_log_volume", a.mean_log_volume},
                      {"observations", raw.size()},
                      {"surrogate_seed", ticker_seed(config.seed, raw.ticker)},
                      {"status", it == report.failures.end() ? "ok" : "failed"}};
        if (it != report.failures.end()) {
            entry["error"] = it->error;
        } else {
            entry["record"] = "tickers/" + file_stem(raw.ticker) + ".json";
        }
        universe_json.push_back(entry);
    }

    auto write_manifest = [&](const std::string& status) {
        json m = {{"schema", kSchemaVersion},
                  {"status", status},
                  {"seed", config.seed},
                  {"config", to_json(config)},
                  {"seed_derivation",
                   {{"ticker", "derive_seed(seed, fnv1a(ticker)); surrogate i uses derive_seed(ticker_seed, i)"},
                    {"benchmark", "derive_seed(seed, 0)"},
                    {"benchmark_surrogates", "derive_seed(seed, 1)"}}},
                  {"universe", universe_json},
                  {"tickers", universe.size()},
                  {"failed", report.failures.size()},
                  {"files", writer.files()}};
        if (config.emit_figures && status == "ok") {
            m["benchmark"] = {{"kind", "fgn"},
                              {"hurst", 0.5},
                              {"n", report.benchmark.n},
                              {"seed", report.benchmark.seed},
                              {"surrogate_seed", benchmark_surrogate_seed(config.seed)}};
        }
        writer.write_json("manifest.json", m);
    };

    if (over_budget) {
        write_manifest("failed");
        report.files = writer.files();
        std::ostringstream msg;
        msg << report.failures.size() << " of " << universe.size()
            << " tickers failed, over the failure budget of " << config.failure_budget;
        if (!report.failures.empty()) {
            msg << "; first: " << report.failures.front().ticker << ": " << report.failures.front().error;
        }
        throw BudgetExceeded(msg.str());
    }

    // Universe tables, built only from the per-ticker records.
    std::vector<surrogate::SurrogateTestReport> reports;
    std::vector<double> logvol;
    std::vector<double> h1;
    std::vector<double> h2;
    std::ostringstream stats_csv;
    std::ostringstream ghe_csv;
    std::ostringstream qhq_csv;
    std::ostringstream mfdfa_csv;
    std::ostringstream dh_csv;
    std::ostringstream da_csv;
    json stats_rows = json::array();
    json ghe_rows = json::array();
    json mfdfa_rows = json::array();
    json dh_rows = json::array();
    json da_rows = json::array();

    stats_csv << "Crypto";
    for (const char* c : kStatColumns) stats_csv << ',' << c;
    stats_csv << '\n';
    ghe_csv << "Crypto,Quartile,Log vol.,H(q=1),H(q=2)\n";
    qhq_csv << "Crypto,q,H(q),qH(q),H(q) std. dev.\n";
    mfdfa_csv << "Crypto,Quartile,ΔH,Δα,Zero-variance segments,Warnings\n";
    const std::string cl = cl_label(config.surrogate.ci_low) + "," + cl_label(config.surrogate.ci_high);
    dh_csv << "Crypto,ΔH,ΔH_shuffled," << cl << ",*\n";
    da_csv << "Crypto,Δα,Δα_shuffled," << cl << ",*\n";

    auto surrogate_row = [](std::ostringstream& out, json& rows, const std::string& ticker,
                            const surrogate::SurrogateTestReport& r) {
        out << csv_field(ticker) << ',' << num(r.original) << ',' << num(r.shuffled_mean) << ',' << num(r.cl_low)
            << ',' << num(r.cl_high) << ',' << (r.flagged ? "*" : "") << '\n';
        json j = to_json(r);
        j["ticker"] = ticker;
        rows.push_back(j);
    };

    for (const auto& r : report.results) {
        const auto sv = stat_values(r.stats);
        stats_csv << csv_field(r.ticker);
        for (double v : sv) stats_csv << ',' << num(v);
        stats_csv << '\n';
        json sj = to_json(r.stats);
        sj["ticker"] = r.ticker;
        stats_rows.push_back(sj);

        logvol.push_back(r.mean_log_volume);
        h1.push_back(r.ghe.h_at(1.0));
        h2.push_back(r.ghe.h_at(2.0));
        ghe_csv << csv_field(r.ticker) << ',' << r.quartile << ',' << num(r.mean_log_volume) << ','
                << num(h1.back()) << ',' << num(h2.back()) << '\n';
        ghe_rows.push_back({{"ticker", r.ticker},
                            {"quartile", r.quartile},
                            {"mean_log_volume", r.mean_log_volume},
                            {"h_q1", h1.back()},
                            {"h_q2", h2.back()}});
        for (std::size_t k = 0; k < r.ghe.q_grid.size(); ++k) {
            qhq_csv << csv_field(r.ticker) << ',' << num(r.ghe.q_grid[k]) << ',' << num(r.ghe.h_of_q[k]) << ','
                    << num(r.ghe.qhq[k]) << ',' << num(r.ghe.h_stderr[k]) << '\n';
        }

        const auto& m = r.surrogate.original;
        std::string warnings;
        for (const auto& w : m.warnings) warnings += (warnings.empty() ? "" : ";") + w;
        mfdfa_csv << csv_field(r.ticker) << ',' << r.quartile << ',' << num(m.delta_h) << ','
                  << num(m.delta_alpha) << ',' << m.zero_variance_segments << ',' << csv_field(warnings) << '\n';
        mfdfa_rows.push_back({{"ticker", r.ticker},
                              {"quartile", r.quartile},
                              {"delta_h", m.delta_h},
                              {"delta_alpha", m.delta_alpha},
                              {"zero_variance_segments", m.zero_variance_segments},
                              {"warnings", m.warnings}});

        surrogate_row(dh_csv, dh_rows, r.ticker, r.surrogate.delta_h);
        surrogate_row(da_csv, da_rows, r.ticker, r.surrogate.delta_alpha);
        reports.push_back(r.surrogate.delta_h);
        reports.push_back(r.surrogate.delta_alpha);
    }

    std::vector<ingest::QuartileAssignment> ok_assignments;
    for (const auto& r : report.results) {
        ok_assignments.push_back(assignment_of.at(r.ticker));
    }
    report.table = surrogate::aggregate_by_quartile(reports, ok_assignments);
    const Table1 t1 = table1_from(logvol, h1, h2);

    auto tagged = [&](json rows) { return json{{"schema", kSchemaVersion}, {"seed", config.seed}, {"rows", rows}}; };
    writer.write("stats.csv", stats_csv.str());
    writer.write_json("stats.json", tagged(stats_rows));
    writer.write("ghe.csv", ghe_csv.str());
    writer.write_json("ghe.json", tagged(ghe_rows));
    writer.write("ghe_qhq.csv", qhq_csv.str());
    writer.write("mfdfa.csv", mfdfa_csv.str());
    writer.write_json("mfdfa.json", tagged(mfdfa_rows));
    writer.write("surrogate_delta_h.csv", dh_csv.str());
    writer.write_json("surrogate_delta_h.json", tagged(dh_rows));
    writer.write("surrogate_delta_alpha.csv", da_csv.str());
    writer.write_json("surrogate_delta_alpha.json", tagged(da_rows));
    writer.write("table1.csv", table1_csv(t1));
    writer.write_json("table1.json", table1_json(t1, config.seed));
    writer.write("table2.csv", table2_csv(report.table));
    writer.write_json("table2.json", table2_json(report.table, config.seed));
    const json rates = flag_rates_json(report.table, config.seed);
    writer.write("flag_rates.csv", flag_rates_csv(rates));
    writer.write_json("flag_rates.json", rates);

    if (config.emit_figures) {
        auto& b = report.benchmark;
        b.seed = benchmark_seed(config.seed);
        for (const auto& r : report.results) b.n = std::max(b.n, r.stats.n);
        synth::SynthSpec spec;
        spec.kind = synth::SynthKind::fgn;
        spec.hurst = 0.5;
        spec.n = b.n;
        spec.seed = b.seed;
        const auto series = synth::generate(spec);
        b.ghe = ghe::estimate_hurst(series, config.ghe);
        auto sc = config.surrogate;
        sc.base_seed = benchmark_surrogate_seed(config.seed);
        sc.threads = config.threads;
        b.surrogate = surrogate::surrogate_test(series, sc, config.mfdfa);
        for (auto id : figures::all_figures()) {
            std::ostringstream out;
            figures::emit_figure_data(report.results, b, id, config.seed, out);
            writer.write("figures/" + std::string(figures::to_string(id)) + ".csv", out.str());
        }
    }

    write_manifest("ok");
    report.files = writer.files();

    if (config.self_check) {
        self_check(config.output_dir);
    }
    return report;
}

void self_check(const fs::path& output_dir, double tolerance) {
    const json manifest = read_json(output_dir / "manifest.json");
    std::vector<double> logvol;
    std::vector<double> h1;
    std::vector<double> h2;
    std::vector<surrogate::SurrogateTestReport> reports;
    std::vector<ingest::QuartileAssignment> assignments;
    for (const auto& entry : manifest.at("universe")) {
        if (entry.at("status") != "ok") continue;
        const json t = read_json(output_dir / entry.at("record").get<std::string>());
        const std::string ticker = t.at("ticker").get<std::string>();
        ghe::GheResult g;
        g.q_grid = as_reals(t.at("ghe").at("q"));
        g.h_of_q = as_reals(t.at("ghe").at("h"));
        g.q_errors = t.at("ghe").at("q_errors").get<std::vector<std::string>>();
        logvol.push_back(as_real(t.at("mean_log_volume")));
        h1.push_back(g.h_at(1.0));
        h2.push_back(g.h_at(2.0));
        reports.push_back(report_from_json(ticker, t.at("surrogate").at("delta_h")));
        reports.push_back(report_from_json(ticker, t.at("surrogate").at("delta_alpha")));
        assignments.push_back({ticker, as_real(t.at("mean_log_volume")), t.at("quartile").get<int>()});
    }
    const std::uint64_t seed = manifest.at("seed").get<std::uint64_t>();
    const auto table = surrogate::aggregate_by_quartile(reports, assignments);
    compare(table1_json(table1_from(logvol, h1, h2), seed), read_json(output_dir / "table1.json"), tolerance,
            "table1");
    compare(table2_json(table, seed), read_json(output_dir / "table2.json"), tolerance, "table2");
    compare(flag_rates_json(table, seed), read_json(output_dir / "flag_rates.json"), tolerance, "flag_rates");
}

} // namespace hurstlab
