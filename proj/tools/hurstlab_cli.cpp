// hurstlab: long-memory and multifractality diagnostics for daily return series.
//
// Exit codes: 0 success, 1 usage or configuration error, 2 data error,
// 3 more tickers failed than the pipeline's failure budget allows.

#include "hurstlab/config.hpp"
#include "hurstlab/errors.hpp"
#include "hurstlab/ghe.hpp"
#include "hurstlab/ingest.hpp"
#include "hurstlab/mfdfa.hpp"
#include "hurstlab/pipeline.hpp"
#include "hurstlab/stats.hpp"
#include "hurstlab/surrogate.hpp"
#include "hurstlab/synth.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace hurstlab;
using nlohmann::json;

namespace {

std::string num(double v) {
    if (std::isnan(v)) return "NaN";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Output goes to --out when given, stdout otherwise.
void emit(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    const std::filesystem::path path(out_path);
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write " + out_path);
    out << text;
}

// A directory of per-ticker files, a long CSV with a ticker column, or a
// single per-ticker CSV.
std::vector<RawSeries> load_input(const fs::path& input) {
    if (input.empty()) throw ConfigError("--input is required");
    if (!fs::exists(input)) throw DataError("no such input: " + input.string());
    if (fs::is_directory(input)) return ingest::load_universe(input);
    std::ifstream in(input);
    std::string header;
    std::getline(in, header);
    std::transform(header.begin(), header.end(), header.begin(), [](unsigned char c) { return std::tolower(c); });
    if (header.find("ticker") != std::string::npos) return ingest::load_universe(input);
    return {ingest::load_csv(input)};
}

// Runs fn on every series; a failing series is reported and skipped. Returns
// the number of failures.
std::size_t for_each_series(const std::vector<RawSeries>& universe,
                            const std::function<void(const RawSeries&, const ReturnSeries&)>& fn) {
    std::size_t failed = 0;
    for (const auto& raw : universe) {
        try {
            fn(raw, ingest::log_returns(ingest::validate_continuity(raw)));
        } catch (const DataError& e) {
            std::cerr << raw.ticker << ": " << e.what() << '\n';
            ++failed;
        }
    }
    return failed;
}

struct Common {
    std::string input;
    std::string out;
    std::string config_file;
    std::uint64_t seed = 0;
    bool seed_given = false;
};

PipelineConfig make_config(const Common& c) {
    PipelineConfig cfg;
    if (!c.config_file.empty()) apply_config_file(cfg, c.config_file);
    if (!c.input.empty()) cfg.input = c.input;
    if (!c.out.empty()) cfg.output_dir = c.out;
    if (c.seed_given) cfg.seed = c.seed;
    return cfg;
}

int cmd_stats(const Common& c) {
    const auto universe = load_input(c.input);
    std::ostringstream out;
    out << "Crypto,Obs.,Mean,Median,Min,Max,Std. Dev.,Skewness,Kurtosis,Jarque-Bera\n";
    const auto failed = for_each_series(universe, [&](const RawSeries& raw, const ReturnSeries& r) {
        const auto s = stats::describe(r);
        out << raw.ticker << ',' << s.n << ',' << num(s.mean) << ',' << num(s.median) << ',' << num(s.min) << ','
            << num(s.max) << ',' << num(s.std_dev) << ',' << num(s.skewness) << ',' << num(s.kurtosis) << ','
            << num(s.jarque_bera) << '\n';
    });
    emit(c.out, out.str());
    return failed ? 2 : 0;
}

int cmd_ghe(const Common& c) {
    const auto cfg = make_config(c);
    ghe::validate(cfg.ghe);
    const auto universe = load_input(c.input);
    std::ostringstream out;
    out << "Crypto,q,H(q),qH(q),H(q) std. dev.\n";
    const auto failed = for_each_series(universe, [&](const RawSeries& raw, const ReturnSeries& r) {
        const auto g = ghe::estimate_hurst(r, cfg.ghe);
        for (std::size_t k = 0; k < g.q_grid.size(); ++k) {
            out << raw.ticker << ',' << num(g.q_grid[k]) << ',' << num(g.h_of_q[k]) << ',' << num(g.qhq[k]) << ','
                << num(g.h_stderr[k]) << '\n';
            if (!g.ok(k)) std::cerr << raw.ticker << ": q = " << g.q_grid[k] << ": " << g.q_errors[k] << '\n';
        }
    });
    emit(c.out, out.str());
    return failed ? 2 : 0;
}

int cmd_mfdfa(const Common& c) {
    const auto cfg = make_config(c);
    const auto universe = load_input(c.input);
    json out = {{"schema", kSchemaVersion}, {"results", json::array()}};
    const auto failed = for_each_series(universe, [&](const RawSeries& raw, const ReturnSeries& r) {
        json j = to_json(mfdfa::analyze(r, cfg.mfdfa));
        j["ticker"] = raw.ticker;
        out["results"].push_back(j);
    });
    emit(c.out, out.dump(2) + "\n");
    return failed ? 2 : 0;
}

int cmd_surrogate(const Common& c, std::size_t n_shuffles, const std::string& measures) {
    auto cfg = make_config(c);
    if (n_shuffles > 0) cfg.surrogate.n_shuffles = n_shuffles;
    surrogate::validate(cfg.surrogate);
    std::vector<surrogate::Measure> wanted;
    std::istringstream ms(measures);
    for (std::string m; std::getline(ms, m, ',');) wanted.push_back(surrogate::parse_measure(m));
    if (wanted.empty()) throw ConfigError("--measures is empty");

    const auto universe = load_input(c.input);
    std::vector<surrogate::SurrogateTestReport> reports;
    std::vector<RawSeries> ok;
    const auto failed = for_each_series(universe, [&](const RawSeries& raw, const ReturnSeries& r) {
        auto sc = cfg.surrogate;
        sc.base_seed = ticker_seed(cfg.seed, raw.ticker);
        const auto o = surrogate::surrogate_test(r, sc, cfg.mfdfa);
        reports.push_back(o.delta_h);
        reports.push_back(o.delta_alpha);
        ok.push_back(raw);
    });

    std::ostringstream text;
    json twin = {{"schema", kSchemaVersion}, {"seed", cfg.seed}, {"n_shuffles", cfg.surrogate.n_shuffles}};
    for (auto m : wanted) {
        const bool dh = m == surrogate::Measure::delta_h;
        const std::string sym = dh ? "ΔH" : "Δα";
        std::ostringstream lo, hi;
        lo << "CL_" << cfg.surrogate.ci_low;
        hi << "CL_" << cfg.surrogate.ci_high;
        std::ostringstream csv;
        csv << "Crypto," << sym << ',' << sym << "_shuffled," << lo.str() << ',' << hi.str() << ",*\n";
        json rows = json::array();
        for (const auto& r : reports) {
            if (r.measure != m) continue;
            csv << r.ticker << ',' << num(r.original) << ',' << num(r.shuffled_mean) << ',' << num(r.cl_low) << ','
                << num(r.cl_high) << ',' << (r.flagged ? "*" : "") << '\n';
            json j = to_json(r);
            j["ticker"] = r.ticker;
            rows.push_back(j);
        }
        twin[std::string(surrogate::to_string(m))] = rows;
        text << csv.str() << '\n';
        if (!c.out.empty()) {
            fs::create_directories(c.out);
            emit((fs::path(c.out) / ("surrogate_" + std::string(surrogate::to_string(m)) + ".csv")).string(),
                 csv.str());
        }
    }
    if (ok.size() >= 4) {
        const auto table = surrogate::aggregate_by_quartile(reports, ingest::assign_quartiles(ok));
        std::ostringstream csv;
        csv << "Quartile,ΔH,ΔH_shuffled,Δα,Δα_shuffled\n";
        json rows = json::array();
        for (const auto& r : table.rows) {
            csv << "Quartile " << r.quartile << ',' << num(r.delta_h) << ',' << num(r.delta_h_shuffled) << ','
                << num(r.delta_alpha) << ',' << num(r.delta_alpha_shuffled) << '\n';
            rows.push_back({{"quartile", r.quartile},
                            {"members", r.members},
                            {"delta_h", r.delta_h},
                            {"delta_h_shuffled", r.delta_h_shuffled},
                            {"delta_alpha", r.delta_alpha},
                            {"delta_alpha_shuffled", r.delta_alpha_shuffled},
                            {"flagged_delta_h", r.flagged_delta_h},
                            {"flagged_delta_alpha", r.flagged_delta_alpha}});
        }
        twin["quartiles"] = rows;
        text << csv.str();
        if (!c.out.empty()) emit((fs::path(c.out) / "table2.csv").string(), csv.str());
    } else {
        std::cerr << "fewer than 4 series; quartile table skipped\n";
    }
    if (c.out.empty()) {
        std::cout << text.str();
    } else {
        emit((fs::path(c.out) / "surrogate.json").string(), twin.dump(2) + "\n");
    }
    return failed ? 2 : 0;
}

struct SimulateArgs {
    std::string kind = "fgn";
    std::size_t n = synth::kBenchmarkLength;
    double hurst = 0.5;
    double weight = 0.75;
    bool signs = false;
    double volume = 1e6;
    std::string start = "2018-01-01";
};

// The generated values are used as percent log returns of a price path that
// starts at 100, one row per calendar day.
int cmd_simulate(const Common& c, const SimulateArgs& a) {
    synth::SynthSpec spec;
    spec.kind = synth::parse_kind(a.kind);
    spec.n = a.n;
    spec.hurst = a.hurst;
    spec.cascade_weight = a.weight;
    spec.cascade_signs = a.signs;
    spec.seed = c.seed;
    const auto start = parse_date(a.start);
    if (!start) throw ConfigError("--start must be YYYY-MM-DD");
    const auto series = synth::generate(spec);

    RawSeries raw;
    raw.ticker = series.ticker;
    double price = 100.0;
    Date d = *start;
    raw.dates.push_back(d);
    raw.prices.push_back(price);
    raw.volumes.push_back(a.volume);
    for (double x : series.values) {
        price *= std::exp(x / 100.0);
        d += std::chrono::days{1};
        raw.dates.push_back(d);
        raw.prices.push_back(price);
        raw.volumes.push_back(a.volume);
    }
    std::ostringstream out;
    ingest::write_csv(out, raw);
    emit(c.out, out.str());
    return 0;
}

int cmd_pipeline(const Common& c, bool emit_figures, bool self_check, std::size_t threads) {
    auto cfg = make_config(c);
    if (emit_figures) cfg.emit_figures = true;
    if (self_check) cfg.self_check = true;
    if (threads > 0) cfg.threads = threads;
    const auto report = run_pipeline(cfg, &std::cerr);
    std::cerr << report.results.size() << " tickers analyzed, " << report.failures.size() << " failed; "
              << report.files.size() + 1 << " files in " << cfg.output_dir.string() << '\n';
    return 0;
}

void add_common(CLI::App* sub, Common& c, bool with_seed, bool with_config) {
    sub->add_option("--input", c.input, "Per-ticker CSV, long CSV with a ticker column, or a directory of CSVs");
    sub->add_option("--out", c.out, "Output file or directory (default: stdout)");
    if (with_config) sub->add_option("--config", c.config_file, "key = value config file, or a manifest.json");
    if (with_seed) {
        sub->add_option_function<std::uint64_t>(
            "--seed", [&c](std::uint64_t s) {
                c.seed = s;
                c.seed_given = true;
            },
            "Random seed");
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Generalized Hurst exponent, MF-DFA and shuffling surrogate tests for daily return series"};
    app.require_subcommand(1);

    Common common;
    auto* stats_cmd = app.add_subcommand("stats", "Descriptive statistics of percent log returns");
    add_common(stats_cmd, common, false, false);

    auto* ghe_cmd = app.add_subcommand("ghe", "Generalized Hurst exponent H(q) and qH(q)");
    add_common(ghe_cmd, common, false, true);

    auto* mfdfa_cmd = app.add_subcommand("mfdfa", "MF-DFA: H(q), tau(q), spectrum, delta H and delta alpha (JSON)");
    add_common(mfdfa_cmd, common, false, true);

    std::size_t n_shuffles = 0;
    std::string measures = "delta_h,delta_alpha";
    auto* sur_cmd = app.add_subcommand("surrogate", "Shuffling surrogate test with percentile confidence limits");
    add_common(sur_cmd, common, true, true);
    sur_cmd->add_option("--n", n_shuffles, "Number of shuffled surrogates (default 1000)");
    sur_cmd->add_option("--measures", measures, "Comma list of delta_h, delta_alpha");

    SimulateArgs sim;
    auto* sim_cmd = app.add_subcommand("simulate", "Write a synthetic price/volume CSV");
    add_common(sim_cmd, common, true, false);
    sim_cmd->add_option("--kind", sim.kind, "fgn, fbm, gaussian_white or binomial_cascade")->capture_default_str();
    sim_cmd->add_option("--n", sim.n, "Number of returns")->capture_default_str();
    sim_cmd->add_option("--hurst", sim.hurst, "Hurst exponent (fgn, fbm)")->capture_default_str();
    sim_cmd->add_option("--weight", sim.weight, "Cascade weight a in (0.5, 1)")->capture_default_str();
    sim_cmd->add_flag("--signs", sim.signs, "Randomize cascade signs");
    sim_cmd->add_option("--volume", sim.volume, "Constant daily volume")->capture_default_str();
    sim_cmd->add_option("--start", sim.start, "First date")->capture_default_str();

    bool emit_figures = false;
    bool self_check = false;
    std::size_t threads = 0;
    auto* pipe_cmd = app.add_subcommand("pipeline", "Full run over a universe of series into a report directory");
    add_common(pipe_cmd, common, true, true);
    pipe_cmd->add_flag("--emit-figures", emit_figures, "Write figure data files");
    pipe_cmd->add_flag("--self-check", self_check, "Re-derive aggregate tables from the per-ticker records");
    pipe_cmd->add_option("--threads", threads, "Worker threads (default: all cores)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (*stats_cmd) return cmd_stats(common);
        if (*ghe_cmd) return cmd_ghe(common);
        if (*mfdfa_cmd) return cmd_mfdfa(common);
        if (*sur_cmd) return cmd_surrogate(common, n_shuffles, measures);
        if (*sim_cmd) return cmd_simulate(common, sim);
        if (*pipe_cmd) {
            if (common.out.empty() && common.config_file.empty()) throw ConfigError("--out is required");
            return cmd_pipeline(common, emit_figures, self_check, threads);
        }
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const BudgetExceeded& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const DataError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 1;
}
