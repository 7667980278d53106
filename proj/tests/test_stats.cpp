#include "hurstlab/errors.hpp"
#include "hurstlab/rng.hpp"
#include "hurstlab/stats.hpp"

#include "moment_rows.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

using namespace hurstlab;

TEST_CASE("JB from printed moments matches the printed statistic") {
    CHECK(stats::jb_from_moments(789, -0.2803, 5.9933) == doctest::Approx(304.89).epsilon(0.01));
    CHECK(stats::jb_from_moments(789, 0.0198, 4.8426) == doctest::Approx(111.66).epsilon(0.01));
    CHECK(stats::jb_from_moments(500, 0.0, 3.0) == 0.0);
    for (const auto& row : kMomentRows) {
        const double jb = stats::jb_from_moments(static_cast<std::size_t>(row.n), row.skewness, row.kurtosis);
        CHECK_MESSAGE(std::abs(jb - row.jarque_bera) <= 0.01 * row.jarque_bera, row.ticker);
    }
}

TEST_CASE("symmetric series has zero skewness") {
    std::vector<double> x;
    for (int i = 0; i < 50; ++i) {
        x.push_back(-1.0);
        x.push_back(1.0);
    }
    const auto s = stats::describe(x);
    CHECK(s.skewness == doctest::Approx(0.0));
    CHECK(s.kurtosis == doctest::Approx(1.0));
    CHECK(s.median == 0.0);
}

TEST_CASE("full battery on a small hand sample") {
    const std::vector<double> x = {1, 2, 3, 4, 5, 100};
    const double n = 6.0;
    double mean = 0;
    for (double v : x) mean += v;
    mean /= n;
    double m2 = 0, m3 = 0, m4 = 0;
    for (double v : x) {
        const double d = v - mean;
        m2 += d * d;
        m3 += d * d * d;
        m4 += d * d * d * d;
    }
    m2 /= n;
    m3 /= n;
    m4 /= n;
    const double skew = m3 / std::pow(m2, 1.5);
    const double kurt = m4 / (m2 * m2);

    const auto s = stats::describe(x);
    CHECK(s.n == 6);
    CHECK(s.mean == doctest::Approx(115.0 / 6.0).epsilon(1e-14));
    CHECK(s.median == 3.5);
    CHECK(s.min == 1.0);
    CHECK(s.max == 100.0);
    CHECK(s.std_dev == doctest::Approx(std::sqrt(m2 * n / (n - 1))).epsilon(1e-14));
    CHECK(s.skewness == doctest::Approx(skew).epsilon(1e-13));
    CHECK(s.kurtosis == doctest::Approx(kurt).epsilon(1e-13));
    CHECK(s.jarque_bera == doctest::Approx(n / 6.0 * (skew * skew + (kurt - 3) * (kurt - 3) / 4)).epsilon(1e-13));
}

TEST_CASE("skewness, kurtosis and JB are affine invariant") {
    Rng rng(21);
    std::vector<double> x(400);
    for (auto& v : x) v = std::exp(rng.normal());
    const auto base = stats::describe(x);
    for (const auto [a, b] : {std::pair{2.5, -7.0}, std::pair{1e-3, 4.0}, std::pair{1e3, 0.0}}) {
        std::vector<double> y;
        for (double v : x) y.push_back(a * v + b);
        const auto t = stats::describe(y);
        CHECK(std::abs(t.skewness - base.skewness) < 1e-9);
        CHECK(std::abs(t.kurtosis - base.kurtosis) < 1e-9);
        CHECK(std::abs(t.jarque_bera - base.jarque_bera) < 1e-9 * std::max(1.0, base.jarque_bera));
    }
}

TEST_CASE("standard normal sample of 1e5 draws") {
    Rng rng(2024);
    std::vector<double> x(100000);
    for (auto& v : x) v = rng.normal();
    const auto s = stats::describe(x);
    CHECK(std::abs(s.skewness) < 0.05);
    CHECK(std::abs(s.kurtosis - 3.0) < 0.1);
}

TEST_CASE("statistics invariants on random samples") {
    Rng rng(8);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> x(4 + rng.below(60));
        for (auto& v : x) v = rng.normal() * (1 + rng.below(5)) + (rng.uniform() < 0.1 ? 30.0 : 0.0);
        const auto s = stats::describe(x);
        CHECK(s.min <= s.median);
        CHECK(s.median <= s.max);
        CHECK(s.std_dev >= 0.0);
        CHECK(s.kurtosis >= 1.0 - 1e-12);
        CHECK(s.jarque_bera >= 0.0);
    }
}

TEST_CASE("describe preconditions") {
    CHECK_THROWS_AS(stats::describe(std::vector<double>{1, 2, 3}), TooShort);
    CHECK_THROWS_AS(stats::describe(std::vector<double>{2, 2, 2, 2, 2}), DegenerateSeries);
}

TEST_CASE("median and interpolated quantiles") {
    CHECK(stats::median(std::vector<double>{3, 1, 2}) == 2.0);
    CHECK(stats::median(std::vector<double>{4, 1, 3, 2}) == 2.5);
    const std::vector<double> sorted = {10, 20, 30, 40, 50};
    CHECK(stats::quantile_sorted(sorted, 0.0) == 10.0);
    CHECK(stats::quantile_sorted(sorted, 1.0) == 50.0);
    CHECK(stats::quantile_sorted(sorted, 0.5) == 30.0);
    CHECK(stats::quantile_sorted(sorted, 0.1) == doctest::Approx(14.0));
    CHECK(stats::quantile_sorted(sorted, 0.975) == doctest::Approx(49.0));
}
