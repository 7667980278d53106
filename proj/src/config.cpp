#include "hurstlab/config.hpp"

#include "hurstlab/errors.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

namespace hurstlab {

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

double parse_real(const std::string& text) {
    const std::string t = trim(text);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || ec != std::errc{} || ptr != t.data() + t.size()) {
        throw ConfigError("not a number: '" + t + "'");
    }
    return v;
}

template <typename Int>
Int parse_int(const std::string& text) {
    const std::string t = trim(text);
    Int v{};
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || ec != std::errc{} || ptr != t.data() + t.size()) {
        throw ConfigError("not a non-negative integer: '" + t + "'");
    }
    return v;
}

bool parse_bool(const std::string& text) {
    std::string t = trim(text);
    std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::tolower(c); });
    if (t == "true" || t == "1" || t == "yes" || t == "on") return true;
    if (t == "false" || t == "0" || t == "no" || t == "off") return false;
    throw ConfigError("not a boolean: '" + t + "'");
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    std::istringstream in(text);
    while (std::getline(in, cur, sep)) {
        parts.push_back(trim(cur));
    }
    return parts;
}

void set_key(PipelineConfig& c, const std::string& key, const std::string& value) {
    if (key == "input") c.input = value;
    else if (key == "output_dir") c.output_dir = value;
    else if (key == "seed") c.seed = parse_int<std::uint64_t>(value);
    else if (key == "emit_figures") c.emit_figures = parse_bool(value);
    else if (key == "self_check") c.self_check = parse_bool(value);
    else if (key == "failure_budget") c.failure_budget = parse_real(value);
    else if (key == "threads") c.threads = parse_int<std::size_t>(value);
    else if (key == "ghe.q") c.ghe.q_grid = parse_real_list(value);
    else if (key == "ghe.tau_max_min") c.ghe.tau_max_min = parse_int<int>(value);
    else if (key == "ghe.tau_max_max") c.ghe.tau_max_max = parse_int<int>(value);
    else if (key == "mfdfa.q") c.mfdfa.q_grid = parse_real_list(value);
    else if (key == "mfdfa.scales") c.mfdfa.scales = parse_size_list(value);
    else if (key == "mfdfa.scale_min") c.mfdfa.scale_min = parse_int<std::size_t>(value);
    else if (key == "mfdfa.scale_max") c.mfdfa.scale_max = parse_int<std::size_t>(value);
    else if (key == "mfdfa.scale_count") c.mfdfa.scale_count = parse_int<std::size_t>(value);
    else if (key == "mfdfa.detrend_order") c.mfdfa.detrend_order = parse_int<int>(value);
    else if (key == "surrogate.n_shuffles") c.surrogate.n_shuffles = parse_int<std::size_t>(value);
    else if (key == "surrogate.ci_low") c.surrogate.ci_low = parse_real(value);
    else if (key == "surrogate.ci_high") c.surrogate.ci_high = parse_real(value);
    else throw ConfigError("unknown key '" + key + "'");
}

bool has_q(const std::vector<double>& grid, double q) {
    return std::any_of(grid.begin(), grid.end(), [q](double v) { return std::abs(v - q) < 1e-9; });
}

} // namespace

std::vector<double> parse_real_list(const std::string& text) {
    if (text.find(':') != std::string::npos) {
        const auto parts = split(text, ':');
        if (parts.size() != 3) {
            throw ConfigError("range must be lo:hi:step, got '" + text + "'");
        }
        const double lo = parse_real(parts[0]);
        const double hi = parse_real(parts[1]);
        const double step = parse_real(parts[2]);
        if (!(step > 0.0) || hi < lo) {
            throw ConfigError("range needs lo <= hi and step > 0, got '" + text + "'");
        }
        return mfdfa::make_q_grid(lo, hi, step);
    }
    std::vector<double> out;
    for (const auto& p : split(text, ',')) {
        out.push_back(parse_real(p));
    }
    if (out.empty()) {
        throw ConfigError("empty list");
    }
    return out;
}

std::vector<std::size_t> parse_size_list(const std::string& text) {
    std::vector<std::size_t> out;
    for (const auto& p : split(text, ',')) {
        out.push_back(parse_int<std::size_t>(p));
    }
    if (out.empty()) {
        throw ConfigError("empty list");
    }
    return out;
}

void validate(const PipelineConfig& config) {
    ghe::validate(config.ghe);
    surrogate::validate(config.surrogate);
    if (config.mfdfa.q_grid.empty()) {
        throw ConfigError("MF-DFA q grid is empty");
    }
    if (config.mfdfa.detrend_order < 0) {
        throw ConfigError("detrend order must be non-negative");
    }
    if (!has_q(config.ghe.q_grid, 1.0) || !has_q(config.ghe.q_grid, 2.0)) {
        throw ConfigError("the GHE q grid must contain q = 1 and q = 2");
    }
    if (!(config.failure_budget >= 0.0 && config.failure_budget <= 1.0)) {
        throw ConfigError("failure_budget must lie in [0, 1]");
    }
}

void apply_config_text(PipelineConfig& config, std::istream& in) {
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        if (trim(line).empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
        }
        try {
            set_key(config, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
        } catch (const ConfigError& e) {
            throw ConfigError("config line " + std::to_string(lineno) + ": " + e.what());
        }
    }
}

void apply_config_file(PipelineConfig& config, const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file " + path.string());
    }
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(text);
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError("config file " + path.string() + ": " + e.what());
        }
        config = config_from_json(j.contains("config") ? j.at("config") : j);
        return;
    }
    std::istringstream lines(text);
    apply_config_text(config, lines);
}

nlohmann::json to_json(const PipelineConfig& c) {
    nlohmann::json j;
    j["input"] = c.input.string();
    j["seed"] = c.seed;
    j["emit_figures"] = c.emit_figures;
    j["self_check"] = c.self_check;
    j["failure_budget"] = c.failure_budget;
    j["ghe"] = {{"q", c.ghe.q_grid}, {"tau_max_min", c.ghe.tau_max_min}, {"tau_max_max", c.ghe.tau_max_max}};
    j["mfdfa"] = {{"q", c.mfdfa.q_grid},
                  {"scales", c.mfdfa.scales},
                  {"scale_min", c.mfdfa.scale_min},
                  {"scale_max", c.mfdfa.scale_max},
                  {"scale_count", c.mfdfa.scale_count},
                  {"detrend_order", c.mfdfa.detrend_order}};
    j["surrogate"] = {{"n_shuffles", c.surrogate.n_shuffles},
                      {"ci_low", c.surrogate.ci_low},
                      {"ci_high", c.surrogate.ci_high}};
    return j;
}

PipelineConfig config_from_json(const nlohmann::json& j) {
    PipelineConfig c;
    try {
        c.input = j.value("input", std::string{});
        c.output_dir = j.value("output_dir", std::string{});
        c.seed = j.value("seed", c.seed);
        c.emit_figures = j.value("emit_figures", c.emit_figures);
        c.self_check = j.value("self_check", c.self_check);
        c.failure_budget = j.value("failure_budget", c.failure_budget);
        if (j.contains("ghe")) {
            const auto& g = j.at("ghe");
            c.ghe.q_grid = g.value("q", c.ghe.q_grid);
            c.ghe.tau_max_min = g.value("tau_max_min", c.ghe.tau_max_min);
            c.ghe.tau_max_max = g.value("tau_max_max", c.ghe.tau_max_max);
        }
        if (j.contains("mfdfa")) {
            const auto& m = j.at("mfdfa");
            c.mfdfa.q_grid = m.value("q", c.mfdfa.q_grid);
            c.mfdfa.scales = m.value("scales", c.mfdfa.scales);
            c.mfdfa.scale_min = m.value("scale_min", c.mfdfa.scale_min);
            c.mfdfa.scale_max = m.value("scale_max", c.mfdfa.scale_max);
            c.mfdfa.scale_count = m.value("scale_count", c.mfdfa.scale_count);
            c.mfdfa.detrend_order = m.value("detrend_order", c.mfdfa.detrend_order);
        }
        if (j.contains("surrogate")) {
            const auto& s = j.at("surrogate");
            c.surrogate.n_shuffles = s.value("n_shuffles", c.surrogate.n_shuffles);
            c.surrogate.ci_low = s.value("ci_low", c.surrogate.ci_low);
            c.surrogate.ci_high = s.value("ci_high", c.surrogate.ci_high);
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("bad config JSON: ") + e.what());
    }
    return c;
}

} // namespace hurstlab
