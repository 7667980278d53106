#include "hurstlab/errors.hpp"
#include "hurstlab/mfdfa.hpp"
#include "hurstlab/rng.hpp"
#include "hurstlab/synth.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace hurstlab;

namespace {

std::vector<double> fgn(std::size_t n, double h, std::uint64_t seed) {
    synth::SynthSpec s;
    s.n = n;
    s.hurst = h;
    s.seed = seed;
    return synth::generate(s).values;
}

std::size_t index_of(const std::vector<double>& grid, double q) {
    const auto it = std::find_if(grid.begin(), grid.end(), [q](double v) { return std::abs(v - q) < 1e-12; });
    REQUIRE(it != grid.end());
    return static_cast<std::size_t>(it - grid.begin());
}

} // namespace

TEST_CASE("default grids and scales") {
    const auto q = mfdfa::default_q_grid();
    CHECK(q.size() == 33);
    CHECK(q.front() == -4.0);
    CHECK(q.back() == 4.0);
    CHECK(q[16] == 0.0);
    const auto s = mfdfa::resolve_scales(mfdfa::MfdfaConfig{}, 789);
    CHECK(s.front() == 10);
    CHECK(s.back() == 197);
    CHECK(s.size() <= 16);
    CHECK(std::is_sorted(s.begin(), s.end()));
    CHECK(std::adjacent_find(s.begin(), s.end()) == s.end());
    CHECK(mfdfa::dyadic_scales(10, 4096) == std::vector<std::size_t>{16, 32, 64, 128, 256, 512, 1024, 2048, 4096});
}

TEST_CASE("config validation") {
    mfdfa::MfdfaConfig c;
    c.scales = {4, 8, 16, 32, 64};
    CHECK_THROWS_AS(mfdfa::validate(c, 1000), ConfigError); // fewer than 6 scales
    c.scales = {2, 4, 8, 16, 32, 64};
    CHECK_THROWS_AS(mfdfa::validate(c, 1000), ConfigError); // 2 <= order + 1
    c.scales = {4, 8, 16, 32, 64, 300};
    CHECK_THROWS_AS(mfdfa::validate(c, 1000), ConfigError); // above n / 4
    c.scales = {4, 8, 8, 16, 32, 64};
    CHECK_THROWS_AS(mfdfa::validate(c, 1000), ConfigError);
    c.scales = {4, 8, 16, 32, 64, 128};
    CHECK_NOTHROW(mfdfa::validate(c, 1000));
    c.q_grid.clear();
    CHECK_THROWS_AS(mfdfa::validate(c, 1000), ConfigError);
}

TEST_CASE("profile") {
    const auto p = mfdfa::profile(std::vector<double>{3, 3, 3, 3});
    for (double v : p.y) CHECK(v == 0.0);

    const auto alt = mfdfa::profile(std::vector<double>{1, -1, 1, -1});
    REQUIRE(alt.size() == 5);
    CHECK(alt.y[0] == 0.0);
    CHECK(std::vector<double>(alt.y.begin() + 1, alt.y.end()) == std::vector<double>{1, 0, 1, 0});

    Rng rng(4);
    std::vector<double> x(789);
    for (auto& v : x) v = 5.0 + 3.0 * rng.normal();
    const auto q = mfdfa::profile(x);
    CHECK(std::abs(q.y.back()) < 1e-9 * 789 * 3.0);
}

TEST_CASE("detrending removes polynomials up to the order") {
    mfdfa::Profile line, quad;
    for (int i = 0; i < 40; ++i) {
        line.y.push_back(2.0 - 0.75 * i);
        quad.y.push_back(0.1 * i * i - i + 4.0);
    }
    for (double f : mfdfa::segment_fluctuations(line, 8, 1)) CHECK(f == 0.0);
    for (double f : mfdfa::segment_fluctuations(quad, 8, 1)) CHECK(f > 0.0);
    for (double f : mfdfa::segment_fluctuations(quad, 8, 2)) CHECK(f == 0.0);
    CHECK(mfdfa::segment_fluctuations(quad, 8, 1).size() == 10);
    CHECK_THROWS_AS(mfdfa::segment_fluctuations(quad, 2, 1), ConfigError);
    CHECK_THROWS_AS(mfdfa::segment_fluctuations(quad, 41, 1), ConfigError);
}

TEST_CASE("segment variances match normal-equation residuals, forward and backward") {
    // 13 points and s = 4: the backward segments are offset by one.
    const std::vector<double> y = {0.0, 1.0, 3.5, 2.0, -1.0, 0.5, 4.0, 6.0, 5.5, 2.5, 3.0, -2.0, 1.25};
    const auto f2 = mfdfa::segment_fluctuations(mfdfa::Profile{y}, 4, 1);
    REQUIRE(f2.size() == 6);
    for (std::size_t v = 0; v < 3; ++v) {
        CHECK(std::abs(f2[v] - oracle::linear_residual_variance(&y[v * 4], 4)) < 1e-12);
        CHECK(std::abs(f2[3 + v] - oracle::linear_residual_variance(&y[y.size() - (v + 1) * 4], 4)) < 1e-12);
    }
}

TEST_CASE("fluctuation function") {
    const std::vector<double> same(6, 2.25);
    for (double q : {-4.0, -1.0, 0.0, 0.5, 2.0, 4.0}) {
        CHECK(mfdfa::fluctuation_function(same, q).value == doctest::Approx(1.5).epsilon(1e-14));
    }
    const std::vector<double> f2 = {1.0, 4.0, 0.25, 9.0};
    CHECK(mfdfa::fluctuation_function(f2, 2.0).value ==
          doctest::Approx(std::sqrt((1.0 + 4.0 + 0.25 + 9.0) / 4.0)).epsilon(1e-14));
    CHECK(mfdfa::fluctuation_function(std::vector<double>{1.0, 4.0}, -2.0).value ==
          doctest::Approx(std::pow(0.625, -0.5)).epsilon(1e-14));
    CHECK(mfdfa::fluctuation_function(std::vector<double>{1.0, 4.0}, -2.0).value == doctest::Approx(1.2649).epsilon(1e-4));
    CHECK(mfdfa::fluctuation_function(std::vector<double>{1.0, 4.0}, 0.0).value ==
          doctest::Approx(std::exp(0.25 * std::log(4.0))).epsilon(1e-14));
}

TEST_CASE("zero-variance segments") {
    const std::vector<double> f2 = {0.0, 4.0, 0.0, 1.0};
    const auto neg = mfdfa::fluctuation_function(f2, -2.0);
    CHECK(neg.excluded == 2);
    CHECK(neg.value == doctest::Approx(std::pow(0.5 * (0.25 + 1.0), -0.5)));
    const auto zero = mfdfa::fluctuation_function(f2, 0.0);
    CHECK(zero.excluded == 2);
    const auto pos = mfdfa::fluctuation_function(f2, 2.0);
    CHECK(pos.excluded == 0);
    CHECK(pos.value == doctest::Approx(std::sqrt(5.0 / 4.0)));
    CHECK_THROWS_AS(mfdfa::fluctuation_function(std::vector<double>{0.0, 0.0}, -1.0), ZeroVarianceSegment);
    CHECK_THROWS_AS(mfdfa::fluctuation_function(std::vector<double>{0.0, 0.0}, 0.0), ZeroVarianceSegment);
    CHECK(mfdfa::fluctuation_function(std::vector<double>{0.0, 0.0}, 2.0).value == 0.0);
}

TEST_CASE("scaling fit recovers exact power laws") {
    const std::vector<std::size_t> scales = {10, 20, 40, 80, 160, 320};
    const std::vector<double> q = {-2.0, 0.0, 2.0};
    const std::vector<double> h = {0.9, 0.7, 0.55};
    std::vector<std::vector<double>> fq(3);
    for (std::size_t i = 0; i < 3; ++i) {
        for (auto s : scales) fq[i].push_back(3.0 * std::pow(static_cast<double>(s), h[i]));
    }
    const auto fit = mfdfa::hurst_from_scaling(fq, q, scales);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(fit.h_of_q[i] == doctest::Approx(h[i]).epsilon(1e-12));
        CHECK(fit.fit_r2[i] == doctest::Approx(1.0));
    }
    const std::vector<std::size_t> few = {10, 20, 40, 80, 160};
    std::vector<std::vector<double>> short_fq(3, std::vector<double>(5, 1.0));
    CHECK_THROWS_AS(mfdfa::hurst_from_scaling(short_fq, q, few), SingularFit);
}

TEST_CASE("mass exponent and Legendre spectrum") {
    const auto q = mfdfa::default_q_grid();
    const std::vector<double> flat(q.size(), 0.62);
    const auto tau = mfdfa::mass_exponent(q, flat);
    for (std::size_t i = 0; i < q.size(); ++i) CHECK(tau[i] == doctest::Approx(q[i] * 0.62 - 1.0));
    CHECK(tau[16] == -1.0);
    const auto sp = mfdfa::legendre_spectrum(tau, q);
    for (std::size_t i = 0; i < q.size(); ++i) {
        CHECK(sp.alpha[i] == doctest::Approx(0.62).epsilon(1e-12));
        CHECK(sp.f_alpha[i] == doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK(sp.f_alpha[16] == 1.0);
    CHECK_THROWS_AS(mfdfa::legendre_spectrum(std::vector<double>{1, 2}, std::vector<double>{0, 1}), ConfigError);
    CHECK_THROWS_AS(mfdfa::legendre_spectrum(std::vector<double>{1, 2, 3}, std::vector<double>{0, 1, 3}),
                    ConfigError);
}

TEST_CASE("cascade spectrum from the closed-form tau(q)") {
    const auto q = mfdfa::default_q_grid();
    std::vector<double> h;
    for (double v : q) h.push_back(synth::cascade_hurst(0.75, v));
    const auto tau = mfdfa::mass_exponent(q, h);
    CHECK(tau[index_of(q, 2.0)] == doctest::Approx(2.0 * synth::cascade_hurst(0.75, 2.0) - 1.0));
    const auto sp = mfdfa::legendre_spectrum(tau, q);
    const auto [lo, hi] = std::minmax_element(sp.alpha.begin(), sp.alpha.end());
    const double analytic = synth::cascade_alpha(0.75, -4.0) - synth::cascade_alpha(0.75, 4.0);
    CHECK(std::abs((*hi - *lo) - analytic) < 0.15);
    CHECK(*lo > -std::log2(0.75));
    CHECK(*hi < 2.0);
    CHECK(sp.f_alpha[index_of(q, 0.0)] == doctest::Approx(1.0));
}

TEST_CASE("MF-DFA at q = 2 equals plain DFA") {
    mfdfa::MfdfaConfig c;
    c.q_grid = {-1.0, 0.0, 1.0, 2.0};
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const auto x = fgn(1000, 0.3 + 0.1 * static_cast<double>(seed), seed);
        const auto r = mfdfa::analyze(x, c);
        const auto y = oracle::profile(x);
        for (std::size_t j = 0; j < r.scales.size(); ++j) {
            const double f = oracle::dfa_fluctuation(y, r.scales[j]);
            CHECK(std::abs(r.fluctuation[3][j] - f) <= 1e-9 * f);
        }
        CHECK(std::abs(r.h_of_q[3] - oracle::dfa_hurst(x, r.scales)) < 1e-9);
    }
}

TEST_CASE("analyze: measures, spectrum identities and warnings") {
    const auto x = fgn(2000, 0.6, 8);
    const auto r = mfdfa::analyze(x, mfdfa::MfdfaConfig{});
    const auto [hl, hh] = std::minmax_element(r.h_of_q.begin(), r.h_of_q.end());
    const auto [al, ah] = std::minmax_element(r.alpha.begin(), r.alpha.end());
    CHECK(r.delta_h == *hh - *hl);
    CHECK(r.delta_alpha == *ah - *al);
    const auto m = mfdfa::multifractality_measures(r);
    CHECK(m.delta_h == r.delta_h);
    CHECK(m.delta_alpha == r.delta_alpha);
    const auto i0 = index_of(r.q_grid, 0.0);
    CHECK(r.tau_of_q[i0] == -1.0);
    CHECK(r.f_alpha[i0] == 1.0);
    CHECK(*std::max_element(r.f_alpha.begin(), r.f_alpha.end()) <= 1.0 + 1e-9);
    bool monotone = true;
    for (std::size_t i = 1; i < r.h_of_q.size(); ++i) monotone = monotone && r.h_of_q[i] <= r.h_of_q[i - 1] + 1e-6;
    const bool warned = std::find(r.warnings.begin(), r.warnings.end(), "h_of_q_not_monotone") != r.warnings.end();
    CHECK(monotone != warned);
}

TEST_CASE("flat price runs are excluded, counted and flagged") {
    std::vector<double> x = fgn(800, 0.5, 3);
    std::fill(x.begin() + 100, x.begin() + 300, 0.0);
    const auto r = mfdfa::analyze(x, mfdfa::MfdfaConfig{});
    CHECK(r.zero_variance_segments > 0);
    CHECK(std::find(r.warnings.begin(), r.warnings.end(), "zero_variance_segments_excluded") != r.warnings.end());
    for (double h : r.h_of_q) CHECK(std::isfinite(h));
}

TEST_CASE("constant input is degenerate") {
    CHECK_THROWS_AS(mfdfa::analyze(std::vector<double>(500, 1.0), mfdfa::MfdfaConfig{}), DegenerateSeries);
}

TEST_CASE("monofractal fGn at n = 2^14 is flat") {
    const auto r = mfdfa::analyze(fgn(1 << 14, 0.5, 21), mfdfa::MfdfaConfig{});
    const double h2 = r.h_of_q[index_of(r.q_grid, 2.0)];
    for (double h : r.h_of_q) CHECK(std::abs(h - h2) < 0.1);
    CHECK(r.delta_h < 0.1);
}

TEST_CASE("all outputs are invariant to rescaling") {
    const auto x = fgn(789, 0.4, 6);
    const auto base = mfdfa::analyze(x, mfdfa::MfdfaConfig{});
    for (double c : {0.01, 100.0}) {
        std::vector<double> y;
        for (double v : x) y.push_back(c * v);
        const auto r = mfdfa::analyze(y, mfdfa::MfdfaConfig{});
        for (std::size_t i = 0; i < r.q_grid.size(); ++i) {
            CHECK(std::abs(r.h_of_q[i] - base.h_of_q[i]) < 1e-9);
            CHECK(std::abs(r.tau_of_q[i] - base.tau_of_q[i]) < 1e-9);
            CHECK(std::abs(r.alpha[i] - base.alpha[i]) < 1e-9);
            CHECK(std::abs(r.f_alpha[i] - base.f_alpha[i]) < 1e-9);
        }
        CHECK(std::abs(r.delta_h - base.delta_h) < 1e-9);
        CHECK(std::abs(r.delta_alpha - base.delta_alpha) < 1e-9);
    }
}

TEST_CASE("time reversal leaves F_q(s) unchanged") {
    for (std::size_t n : {789u, 1000u, 1237u}) {
        const auto x = fgn(n, 0.7, n);
        std::vector<double> rev(x.rbegin(), x.rend());
        const auto a = mfdfa::analyze(x, mfdfa::MfdfaConfig{});
        const auto b = mfdfa::analyze(rev, mfdfa::MfdfaConfig{});
        for (std::size_t i = 0; i < a.q_grid.size(); ++i) {
            for (std::size_t j = 0; j < a.scales.size(); ++j) {
                CHECK(std::abs(a.fluctuation[i][j] - b.fluctuation[i][j]) <= 1e-12 * a.fluctuation[i][j]);
            }
        }
    }
}

TEST_CASE("a jump on every segment boundary of one scale drops that scale") {
    // n = 789 gives a 790-point profile; s = 10 divides it, so a spike at index
    // 399 puts the profile's only jump on a boundary of both segmentations.
    std::vector<double> x(789, 0.1);
    x[399] = 25.0;
    const auto r = mfdfa::analyze(x, mfdfa::MfdfaConfig{});
    REQUIRE(r.scales.front() == 10);
    CHECK(r.zero_variance_scales == 1);
    for (std::size_t i = 0; i < r.q_grid.size(); ++i) CHECK(r.fluctuation[i][0] == 0.0);
    CHECK(std::find(r.warnings.begin(), r.warnings.end(), "zero_variance_scales_excluded") != r.warnings.end());
    for (double h : r.h_of_q) CHECK(std::isfinite(h));

    // 800-point profile, jump after index 399: every scale dividing 400
    // and 800 loses all its segments.
    std::vector<double> y(799, 0.1);
    y[399] = 25.0;
    mfdfa::MfdfaConfig c;
    c.scales = {5, 8, 10, 23, 29, 37};
    const auto three = mfdfa::analyze(y, c);
    CHECK(three.zero_variance_scales == 3);
    c.scales = {5, 8, 10, 16, 23, 29};
    CHECK_THROWS_AS(mfdfa::analyze(y, c), ZeroVarianceSegment);
}
