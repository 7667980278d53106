#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace hurstlab {

// SplitMix64 finalizer; a bijective 64-bit mixer.
std::uint64_t mix64(std::uint64_t x) noexcept;

// Seed for the index-th independent stream derived from `base`. Used for
// per-surrogate and per-ticker seeds so any single stream can be regenerated
// without replaying the others.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) noexcept;

// FNV-1a, for deriving seeds from ticker symbols.
std::uint64_t hash_string(std::string_view s) noexcept;

// Seeded generator whose outputs are identical on every conforming platform:
// the mt19937_64 engine is fully specified by the standard, and the
// transforms below avoid the implementation-defined std distributions.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    // Uniform on [0, 1) with 53 random bits.
    double uniform();

    // Uniform integer in [0, n), unbiased (rejection). n must be > 0.
    std::uint64_t below(std::uint64_t n);

    // Standard normal via the Marsaglia polar method.
    double normal();

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace hurstlab
