#include <tripeda/rng.hpp>

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

using namespace tripeda;

TEST_SUITE("rng") {

TEST_CASE("SplitMix64 reference vector") {
    SplitMix64 sm(1234567);
    CHECK(sm.next() == 6457827717110365317ULL);
    CHECK(sm.next() == 3203168211198807973ULL);
    CHECK(sm.next() == 9817491932198370423ULL);
}

TEST_CASE("xoshiro256** seeded through SplitMix64") {
    // Computed with an independent arbitrary-precision reimplementation.
    Rng rng(42);
    CHECK(rng.next() == 1546998764402558742ULL);
    CHECK(rng.next() == 6990951692964543102ULL);
    CHECK(rng.next() == 12544586762248559009ULL);
    CHECK(rng.next() == 17057574109182124193ULL);
}

TEST_CASE("uniform01 is the top 53 bits") {
    Rng a(9);
    Rng b(9);
    for (int i = 0; i < 100; ++i) {
        const double u = a.uniform01();
        CHECK(u == static_cast<double>(b.next() >> 11) * 0x1.0p-53);
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
}

TEST_CASE("uniform_int covers the closed range without bias") {
    Rng rng(3);
    std::vector<int> counts(6, 0);
    constexpr int kDraws = 60000;
    for (int i = 0; i < kDraws; ++i) {
        const auto v = rng.uniform_int(10, 15);
        REQUIRE(v >= 10);
        REQUIRE(v <= 15);
        ++counts[v - 10];
    }
    // Each cell ~ Binomial(60000, 1/6): sd ~ 91; 5 sd bounds.
    for (const int c : counts) {
        CHECK(std::abs(c - kDraws / 6) < 460);
    }
    CHECK(rng.uniform_int(7, 7) == 7);
    CHECK_NOTHROW(rng.uniform_int(0, ~0ULL));
}

TEST_CASE("normal moments") {
    Rng rng(5);
    constexpr int kDraws = 200000;
    double sum = 0;
    double ss = 0;
    for (int i = 0; i < kDraws; ++i) {
        const double x = rng.normal(50.0, 20.0);
        sum += x;
        ss += x * x;
    }
    const double mean = sum / kDraws;
    const double sd = std::sqrt(ss / kDraws - mean * mean);
    CHECK(std::abs(mean - 50.0) < 0.25);  // se 0.045
    CHECK(std::abs(sd - 20.0) < 0.2);
}

TEST_CASE("sample_without_replacement") {
    Rng rng(1);
    std::vector<std::size_t> pool(100);
    for (std::size_t i = 0; i < pool.size(); ++i) {
        pool[i] = i * 3;
    }
    const auto picked = sample_without_replacement(pool, 25, rng);
    CHECK(picked.size() == 25);
    CHECK(std::is_sorted(picked.begin(), picked.end()));
    CHECK(std::set<std::size_t>(picked.begin(), picked.end()).size() == 25);
    for (const auto v : picked) {
        CHECK(v % 3 == 0);
    }
    CHECK(sample_without_replacement(pool, 0, rng).empty());
    CHECK(sample_without_replacement(pool, 100, rng) == pool);
    Rng again(1);
    CHECK(sample_without_replacement(pool, 25, again) == picked);
}

}
