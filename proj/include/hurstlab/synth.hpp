#pragma once

#include "hurstlab/series.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

namespace hurstlab::synth {

enum class SynthKind { fgn, fbm, gaussian_white, binomial_cascade };

std::string_view to_string(SynthKind kind);
SynthKind parse_kind(std::string_view name);

// Default length mirrors the 789 daily returns of the reference sample.
inline constexpr std::size_t kBenchmarkLength = 789;

struct SynthSpec {
    SynthKind kind = SynthKind::fgn;
    std::size_t n = kBenchmarkLength;
    double hurst = 0.5;          // fgn / fbm, in (0, 1)
    double cascade_weight = 0.75; // binomial_cascade, in (0.5, 1)
    // Multiply each cascade value by an independent random sign. The signs
    // come from a sub-stream of `seed`, so the measure itself is unaffected.
    bool cascade_signs = false;
    std::uint64_t seed = 0;
};

// Throws ConfigError when the spec violates its invariants.
void validate(const SynthSpec& spec);

// Dispatches on spec.kind.
ReturnSeries generate(const SynthSpec& spec);

// Exact fractional Gaussian noise (unit variance) by circulant embedding of
// the autocovariance. Falls back to generate_fgn_hosking if the embedding has
// a negative eigenvalue.
ReturnSeries generate_fgn(const SynthSpec& spec);

// Exact fGn by the sequential conditional-Gaussian (Durbin-Levinson)
// recursion. O(n^2).
ReturnSeries generate_fgn_hosking(const SynthSpec& spec);

// Fractional Brownian motion: B[0] = 0 and B[t] = sum of the first t fGn
// values generated from the same spec, so diff(B) equals the first n-1 fGn
// values.
ReturnSeries generate_fbm(const SynthSpec& spec);

// Deterministic binomial multiplicative cascade on n = 2^k points: value i is
// a^{ones(i)} (1-a)^{k-ones(i)}, where ones(i) counts the set bits of i. The
// values sum to 1.
ReturnSeries generate_binomial_cascade(const SynthSpec& spec);

// i.i.d. N(0, 1).
ReturnSeries generate_gaussian_white(const SynthSpec& spec);

// gamma(k) = (|k+1|^{2H} - 2|k|^{2H} + |k-1|^{2H}) / 2
double fgn_autocovariance(double hurst, std::size_t lag);

// Closed-form generalized Hurst exponent of the (unsigned) binomial cascade:
// H(q) = 1/q - ln(a^q + (1-a)^q) / (q ln 2). At q = 0 the limit is used.
double cascade_hurst(double weight, double q);

// Singularity strength alpha(q) = d tau / dq with tau(q) = q H(q) - 1.
double cascade_alpha(double weight, double q);

// Constant shift of H(q) caused by random signs: a sign-randomized cascade is
// a random walk whose local variance follows the squared measure, which adds
// ln(a^2 + (1-a)^2) / (2 ln 2) to every H(q).
double cascade_sign_offset(double weight);

} // namespace hurstlab::synth
