#pragma once

#include <cstdint>
#include <random>

namespace hypershape {

/// Deterministic random source. The variate transforms (Box-Muller normal,
/// Marsaglia-Tsang gamma) are implemented here rather than taken from
/// <random> so that a seed pins the exact byte stream regardless of the
/// standard library's distribution internals.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on the open interval (0, 1).
    double uniform();

    /// Standard normal.
    double normal();

    /// Gamma with the given shape and unit scale; shape > 0, fractional
    /// shapes included.
    double gamma(double shape);

    /// Chi-square with (possibly fractional) degrees of freedom df > 0.
    double chi_square(double df) { return 2.0 * gamma(0.5 * df); }

    /// Independent sub-stream seed for chunked runs: splitmix64 over
    /// (seed, index). Fixed chunking makes chunked results reproducible.
    static std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t index) noexcept;

private:
    std::mt19937_64 engine_;
    double cached_normal_ = 0.0;
    bool has_cached_normal_ = false;
};

} // namespace hypershape
