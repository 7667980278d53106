#pragma once

#include "hurstlab/series.hpp"

#include <span>
#include <string>
#include <utility>
#include <vector>

namespace hurstlab::ghe {

// q in 0.1, 0.2, ..., 4.0
std::vector<double> default_q_grid();

struct GheConfig {
    std::vector<double> q_grid = default_q_grid();
    // H(q) is averaged over fits with tau_max in [tau_max_min, tau_max_max].
    int tau_max_min = 5;
    int tau_max_max = 19;
};

// Throws ConfigError unless every q > 0, 2 <= tau_max_min <= tau_max_max and,
// when n is given, tau_max_max < n / 4.
void validate(const GheConfig& config, std::size_t n = 0);

// K_q(tau) for tau = 1..tau_max, stored at k_values[tau - 1].
struct StructureFunction {
    double q = 0.0;
    std::vector<double> k_values;

    int tau_max() const noexcept { return static_cast<int>(k_values.size()); }
};

// The analyzed path X: X[0] = 0 and X[t] = sum of the first t demeaned
// returns, so X[t + tau] - X[t] is a tau-day return.
std::vector<double> cumulative_path(std::span<const double> returns);

// K_q(tau) = <|X(t+tau) - X(t)|^q> / <|X(t)|^q> over all overlapping windows of
// an explicit path. Requires path.size() >= 4 * tau_max and q > 0. Throws
// DegenerateStructure when any K_q(tau) is zero or non-finite.
StructureFunction structure_function_of_path(std::span<const double> path, double q, int tau_max);

// Structure function of cumulative_path(series.values).
StructureFunction structure_function(const ReturnSeries& series, double q, int tau_max);

struct GheResult {
    std::vector<double> q_grid;
    std::vector<double> h_of_q;   // mean over the tau_max range; NaN when the q failed
    std::vector<double> h_stderr; // standard deviation over the tau_max range
    std::vector<double> qhq;      // q * H(q)
    // h_by_tau_max[i][j]: estimate for q_grid[i] with tau_max = tau_max_min + j
    std::vector<std::vector<double>> h_by_tau_max;
    std::vector<std::string> q_errors; // empty string when the q succeeded
    int tau_max_min = 0;
    int tau_max_max = 0;

    bool ok(std::size_t i) const { return q_errors[i].empty(); }
    // H at the grid point nearest to q; throws if q is not on the grid.
    double h_at(double q) const;
};

// Requires n >= 100. Failures of individual q values are recorded in
// q_errors; throws DegenerateStructure only when every q fails.
GheResult estimate_hurst(const ReturnSeries& series, const GheConfig& config);
GheResult estimate_hurst(std::span<const double> returns, const GheConfig& config);

// (q, q H(q)) points for the successful q values.
std::vector<std::pair<double, double>> qhq_curve(const GheResult& result);

// Largest absolute residual of the curve from its least-squares straight
// line; zero for a monofractal.
double linearity_residual(std::span<const std::pair<double, double>> curve);

} // namespace hurstlab::ghe
