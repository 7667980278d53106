#include "hurstlab/errors.hpp"
#include "hurstlab/regression.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

using namespace hurstlab;

TEST_CASE("exact line") {
    const std::vector<double> x = {1, 2, 3, 4, 5};
    std::vector<double> y;
    for (double v : x) y.push_back(2.5 * v - 1.0);
    const auto f = fit_line(x, y);
    CHECK(f.slope == doctest::Approx(2.5).epsilon(1e-14));
    CHECK(f.intercept == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(f.r2 == doctest::Approx(1.0));
}

TEST_CASE("noisy line against hand-computed normal equations") {
    const std::vector<double> x = {0, 1, 2, 3};
    const std::vector<double> y = {1, 3, 2, 5};
    // sum x = 6, sum y = 11, sum xy = 22, sum xx = 14
    const double slope = (4 * 22.0 - 6 * 11.0) / (4 * 14.0 - 36.0);
    const auto f = fit_line(x, y);
    CHECK(f.slope == doctest::Approx(slope));
    CHECK(f.intercept == doctest::Approx((11.0 - slope * 6) / 4));
}

TEST_CASE("singular and non-finite input") {
    CHECK_THROWS_AS(fit_line(std::vector<double>{1}, std::vector<double>{1}), SingularFit);
    CHECK_THROWS_AS(fit_line(std::vector<double>{2, 2, 2}, std::vector<double>{1, 2, 3}), SingularFit);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(fit_line(std::vector<double>{1, 2, 3}, std::vector<double>{1, nan, 3}), DegenerateStructure);
}
