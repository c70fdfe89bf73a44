#include <tripeda/error.hpp>
#include <tripeda/rng.hpp>

#include <algorithm>
#include <bit>
#include <cmath>

namespace tripeda {

auto SplitMix64::next() -> std::uint64_t {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

Rng::Rng(std::uint64_t seed) {
    SplitMix64 expander(seed);
    for (auto& word : s_) {
        word = expander.next();
    }
}

auto Rng::next() -> std::uint64_t {
    const std::uint64_t result = std::rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = std::rotl(s_[3], 45);
    return result;
}

auto Rng::uniform01() -> double {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

auto Rng::uniform_int(std::uint64_t lo, std::uint64_t hi) -> std::uint64_t {
    if (hi < lo) {
        throw Error("uniform_int: empty range");
    }
    const std::uint64_t span = hi - lo;
    if (span == ~std::uint64_t{0}) {
        return next();
    }
    const std::uint64_t mask = std::bit_ceil(span + 1) - 1;
    while (true) {
        const std::uint64_t draw = next() & mask;
        if (draw <= span) {
            return lo + draw;
        }
    }
}

auto Rng::uniform(double lo, double hi) -> double {
    return lo + (hi - lo) * uniform01();
}

auto Rng::normal(double mean, double stddev) -> double {
    while (true) {
        const double u = 2.0 * uniform01() - 1.0;
        const double v = 2.0 * uniform01() - 1.0;
        const double s = u * u + v * v;
        if (s > 0.0 && s < 1.0) {
            return mean + stddev * u * std::sqrt(-2.0 * std::log(s) / s);
        }
    }
}

auto sample_without_replacement(std::vector<std::size_t> candidates, std::size_t count, Rng& rng)
    -> std::vector<std::size_t> {
    if (count > candidates.size()) {
        throw Error("cannot sample more elements than there are candidates");
    }
    for (std::size_t i = 0; i < count; ++i) {
        const auto j = static_cast<std::size_t>(rng.uniform_int(i, candidates.size() - 1));
        std::swap(candidates[i], candidates[j]);
    }
    candidates.resize(count);
    std::sort(candidates.begin(), candidates.end());
    return candidates;
}

}  // namespace tripeda
