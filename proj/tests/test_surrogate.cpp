#include "hurstlab/errors.hpp"
#include "hurstlab/rng.hpp"
#include "hurstlab/stats.hpp"
#include "hurstlab/surrogate.hpp"
#include "hurstlab/synth.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>

using namespace hurstlab;

namespace {

ReturnSeries gaussian(std::size_t n, std::uint64_t seed, std::string ticker = "WN") {
    ReturnSeries s;
    s.ticker = std::move(ticker);
    Rng rng(seed);
    for (std::size_t i = 0; i < n; ++i) s.values.push_back(rng.normal());
    return s;
}

surrogate::SurrogateConfig small_config(std::uint64_t seed, std::size_t shuffles = 100) {
    surrogate::SurrogateConfig c;
    c.n_shuffles = shuffles;
    c.base_seed = seed;
    c.threads = 1;
    return c;
}

} // namespace

TEST_CASE("config validation") {
    surrogate::SurrogateConfig c;
    CHECK_NOTHROW(surrogate::validate(c));
    c.n_shuffles = 99;
    CHECK_THROWS_AS(surrogate::validate(c), ConfigError);
    c = {};
    c.ci_low = 0.5;
    c.ci_high = 0.5;
    CHECK_THROWS_AS(surrogate::validate(c), ConfigError);
    c = {};
    c.ci_high = 1.0;
    CHECK_THROWS_AS(surrogate::validate(c), ConfigError);
    c = {};
    c.ci_low = 0.0;
    CHECK_THROWS_AS(surrogate::validate(c), ConfigError);
    CHECK(surrogate::parse_measure("delta_alpha") == surrogate::Measure::delta_alpha);
    CHECK(surrogate::to_string(surrogate::Measure::delta_h) == "delta_h");
    CHECK_THROWS_AS(surrogate::parse_measure("hurst"), ConfigError);
}

TEST_CASE("shuffle preserves the multiset and records its seed") {
    ReturnSeries flat;
    flat.ticker = "C";
    flat.values.assign(50, 1.5);
    CHECK(surrogate::shuffle(flat, 9).values == flat.values);

    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        const auto s = gaussian(97, seed + 100);
        const auto p = surrogate::shuffle(s, seed);
        CHECK(p.ticker == s.ticker);
        REQUIRE(p.seed.has_value());
        CHECK(*p.seed == seed);
        auto a = s.values;
        auto b = p.values;
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        CHECK(a == b);
    }
}

TEST_CASE("shuffle golden permutation") {
    ReturnSeries s;
    s.values = {0.0, 1.0, 2.0, 3.0};
    const auto p = surrogate::shuffle(s, 20240502);
    CHECK(p.values == std::vector<double>{0.0, 3.0, 2.0, 1.0});
    CHECK(surrogate::shuffle(s, 20240502).values == p.values);
}

TEST_CASE("shuffle is roughly uniform over permutations of 3") {
    ReturnSeries s;
    s.values = {0.0, 1.0, 2.0};
    std::map<std::vector<double>, int> counts;
    for (std::uint64_t seed = 0; seed < 6000; ++seed) ++counts[surrogate::shuffle(s, seed).values];
    CHECK(counts.size() == 6);
    for (const auto& [perm, c] : counts) CHECK(std::abs(c - 1000) < 150);
}

TEST_CASE("summarize: percentiles, mean and flag") {
    std::vector<double> e;
    for (int i = 0; i <= 100; ++i) e.push_back(static_cast<double>(100 - i));
    surrogate::SurrogateConfig c;
    const auto inside = surrogate::summarize("T", surrogate::Measure::delta_h, 50.0, e, c);
    CHECK(inside.cl_low == doctest::Approx(2.5));
    CHECK(inside.cl_high == doctest::Approx(97.5));
    CHECK(inside.shuffled_mean == doctest::Approx(50.0));
    CHECK(inside.surrogates == 101);
    CHECK_FALSE(inside.flagged);
    CHECK(surrogate::summarize("T", surrogate::Measure::delta_h, 2.4, e, c).flagged);
    CHECK(surrogate::summarize("T", surrogate::Measure::delta_h, 97.6, e, c).flagged);
    CHECK_FALSE(surrogate::summarize("T", surrogate::Measure::delta_h, 2.5, e, c).flagged);
    CHECK_THROWS_AS(surrogate::summarize("T", surrogate::Measure::delta_h, 0.0, {}, c), DataError);
}

TEST_CASE("surrogate test: invariants, determinism and thread independence") {
    const auto s = gaussian(400, 17);
    mfdfa::MfdfaConfig m;
    auto c = small_config(5);
    const auto a = surrogate::surrogate_test(s, c, m);
    c.threads = 4;
    const auto b = surrogate::surrogate_test(s, c, m);
    for (const auto* r : {&a.delta_h, &a.delta_alpha}) {
        CHECK(r->cl_low <= r->shuffled_mean);
        CHECK(r->shuffled_mean <= r->cl_high);
        CHECK(r->flagged == (r->original < r->cl_low || r->original > r->cl_high));
        CHECK(r->surrogates == 100);
    }
    CHECK(a.delta_h.original == a.original.delta_h);
    CHECK(a.delta_alpha.original == a.original.delta_alpha);
    CHECK(a.delta_h.shuffled_mean == b.delta_h.shuffled_mean);
    CHECK(a.delta_h.cl_low == b.delta_h.cl_low);
    CHECK(a.delta_alpha.cl_high == b.delta_alpha.cl_high);
    CHECK(a.shuffled_mean_h_of_q == b.shuffled_mean_h_of_q);
    CHECK(a.shuffled_mean_h_of_q.size() == a.original.q_grid.size());

    // a single surrogate can be rebuilt from (base_seed, index)
    const auto third = surrogate::shuffle(s, surrogate::surrogate_seed(5, 3));
    CHECK(third.seed == surrogate::surrogate_seed(5, 3));
    CHECK(surrogate::surrogate_seed(5, 3) != surrogate::surrogate_seed(5, 4));
    CHECK(surrogate::surrogate_seed(5, 3) != surrogate::surrogate_seed(6, 3));
}

TEST_CASE("moments of every surrogate equal the original's") {
    const auto s = gaussian(789, 3);
    const auto d0 = stats::describe(s.values);
    for (std::size_t i = 1; i <= 20; ++i) {
        const auto d = stats::describe(surrogate::shuffle(s, surrogate::surrogate_seed(11, i)).values);
        CHECK(std::abs(d.mean - d0.mean) <= 1e-12 * std::max(1.0, std::abs(d0.mean)));
        CHECK(std::abs(d.std_dev - d0.std_dev) <= 1e-12 * d0.std_dev);
        CHECK(std::abs(d.skewness - d0.skewness) <= 1e-12 * std::max(1.0, std::abs(d0.skewness)));
        CHECK(std::abs(d.kurtosis - d0.kurtosis) <= 1e-12 * d0.kurtosis);
        CHECK(d.min == d0.min);
        CHECK(d.max == d0.max);
        CHECK(d.median == d0.median);
    }
}

TEST_CASE("constant-plus-spike series is rarely flagged") {
    ReturnSeries s;
    s.ticker = "SPIKE";
    s.values.assign(789, 0.1);
    s.values[400] = 25.0;
    int clear = 0;
    const int seeds = 20;
    for (int seed = 0; seed < seeds; ++seed) {
        const auto r = surrogate::surrogate_test(s, small_config(static_cast<std::uint64_t>(seed) + 1, 200), {});
        if (!r.delta_h.flagged && !r.delta_alpha.flagged) ++clear;
    }
    MESSAGE("unflagged seeds: " << clear << " of " << seeds);
    CHECK(clear >= 18);
}

TEST_CASE("aggregate_by_quartile") {
    std::vector<ingest::QuartileAssignment> assign = {{"A", 3.0, 1}, {"B", 2.0, 1}, {"C", 1.0, 2}};
    auto report = [](std::string t, surrogate::Measure m, double orig, double mean, bool flag) {
        surrogate::SurrogateTestReport r;
        r.ticker = std::move(t);
        r.measure = m;
        r.original = orig;
        r.shuffled_mean = mean;
        r.flagged = flag;
        return r;
    };
    using surrogate::Measure;
    std::vector<surrogate::SurrogateTestReport> reports = {
        report("A", Measure::delta_h, 0.3, 0.1, true),   report("A", Measure::delta_alpha, 0.7, 0.2, false),
        report("B", Measure::delta_h, 0.3, 0.1, false),  report("B", Measure::delta_alpha, 0.7, 0.2, true),
        report("C", Measure::delta_h, 0.5, 0.25, true),  report("C", Measure::delta_alpha, 0.9, 0.4, true)};
    const auto t = surrogate::aggregate_by_quartile(reports, assign);
    REQUIRE(t.rows.size() == 2);
    CHECK(t.rows[0].quartile == 1);
    CHECK(t.rows[0].members == 2);
    CHECK(t.rows[0].delta_h == 0.3);
    CHECK(t.rows[0].delta_h_shuffled == 0.1);
    CHECK(t.rows[0].delta_alpha == 0.7);
    CHECK(t.rows[0].delta_alpha_shuffled == 0.2);
    CHECK(t.rows[1].delta_alpha == 0.9);
    CHECK(t.members == 3);
    CHECK(t.flagged_delta_h == 2);
    CHECK(t.flagged_delta_alpha == 2);
    CHECK(t.flag_rate_delta_h() == doctest::Approx(2.0 / 3.0));

    auto orphan = reports;
    orphan.push_back(report("D", Measure::delta_h, 0.1, 0.1, false));
    orphan.push_back(report("D", Measure::delta_alpha, 0.1, 0.1, false));
    CHECK_THROWS_AS(surrogate::aggregate_by_quartile(orphan, assign), DataError);
    auto half = reports;
    half.pop_back();
    CHECK_THROWS_AS(surrogate::aggregate_by_quartile(half, assign), DataError);
}
