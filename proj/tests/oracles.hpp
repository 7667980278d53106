#pragma once

// Reference implementations written without any of the library's numerics,
// used as independent oracles.

#include <cmath>
#include <cstddef>
#include <vector>

namespace oracle {

// Mean squared residual of the least-squares line through (1, y0), (2, y1),
// ..., solved from the 2x2 normal equations.
inline double linear_residual_variance(const double* y, std::size_t s) {
    double st = 0, stt = 0, sy = 0, sty = 0;
    for (std::size_t i = 0; i < s; ++i) {
        const double t = static_cast<double>(i + 1);
        st += t;
        stt += t * t;
        sy += y[i];
        sty += t * y[i];
    }
    const double n = static_cast<double>(s);
    const double det = n * stt - st * st;
    const double b = (n * sty - st * sy) / det;
    const double a = (sy - b * st) / n;
    double ss = 0;
    for (std::size_t i = 0; i < s; ++i) {
        const double r = y[i] - a - b * static_cast<double>(i + 1);
        ss += r * r;
    }
    return ss / n;
}

// Cumulative demeaned sum with a leading zero.
inline std::vector<double> profile(const std::vector<double>& x) {
    double m = 0;
    for (double v : x) m += v;
    m /= static_cast<double>(x.size());
    std::vector<double> y(1, 0.0);
    for (double v : x) y.push_back(y.back() + (v - m));
    return y;
}

// Plain linear DFA: F(s) = sqrt(mean over the forward and backward
// segments of the detrended variance).
inline double dfa_fluctuation(const std::vector<double>& y, std::size_t s) {
    const std::size_t ns = y.size() / s;
    double acc = 0;
    for (std::size_t v = 0; v < ns; ++v) {
        acc += linear_residual_variance(&y[v * s], s);
        acc += linear_residual_variance(&y[y.size() - (v + 1) * s], s);
    }
    return std::sqrt(acc / static_cast<double>(2 * ns));
}

inline double ols_slope(const std::vector<double>& x, const std::vector<double>& y) {
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(x.size());
    my /= static_cast<double>(y.size());
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    return sxy / sxx;
}

inline double dfa_hurst(const std::vector<double>& x, const std::vector<std::size_t>& scales) {
    const auto y = profile(x);
    std::vector<double> ls, lf;
    for (auto s : scales) {
        ls.push_back(std::log(static_cast<double>(s)));
        lf.push_back(std::log(dfa_fluctuation(y, s)));
    }
    return ols_slope(ls, lf);
}

// K_q(tau) by direct enumeration of every window of the path.
inline double structure_function(const std::vector<double>& path, double q, std::size_t tau) {
    double num = 0;
    std::size_t cnt = 0;
    for (std::size_t t = 0; t + tau < path.size(); ++t) {
        num += std::pow(std::fabs(path[t + tau] - path[t]), q);
        ++cnt;
    }
    double den = 0;
    for (double v : path) den += std::pow(std::fabs(v), q);
    return (num / static_cast<double>(cnt)) / (den / static_cast<double>(path.size()));
}

} // namespace oracle
