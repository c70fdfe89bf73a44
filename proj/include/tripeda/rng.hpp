#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace tripeda {

/// SplitMix64 (Steele, Lea & Flood 2014). Used to expand a 64-bit seed into
/// generator state.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
    auto next() -> std::uint64_t;

private:
    std::uint64_t state_;
};

/// xoshiro256** 1.0 (Blackman & Vigna), state filled from SplitMix64(seed).
///
/// Every derived draw below is defined in terms of next() alone so a given
/// seed produces the same stream on every platform and standard library:
///   uniform01      (next() >> 11) * 2^-53, in [0, 1)
///   uniform_int    bitmask rejection over next()
///   normal         Marsaglia polar method; the second deviate is discarded
class Rng {
public:
    explicit Rng(std::uint64_t seed);

    auto next() -> std::uint64_t;
    auto uniform01() -> double;
    /// Uniform on the closed range [lo, hi].
    auto uniform_int(std::uint64_t lo, std::uint64_t hi) -> std::uint64_t;
    auto uniform(double lo, double hi) -> double;
    auto normal(double mean, double stddev) -> double;

private:
    std::array<std::uint64_t, 4> s_{};
};

/// `count` distinct elements of `candidates` via partial Fisher-Yates,
/// returned in ascending order.
auto sample_without_replacement(std::vector<std::size_t> candidates, std::size_t count, Rng& rng)
    -> std::vector<std::size_t>;

}  // namespace tripeda
