#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <set>
#include <vector>

#include "phkm/random.hpp"

using phkm::Rng;

TEST_CASE("uniform draws live in [0,1) and are seed-deterministic", "[random]") {
    Rng a(42), b(42), c(43);
    bool all_in_range = true;
    bool identical = true;
    bool differs = false;
    for (int i = 0; i < 1000; ++i) {
        const double x = a.uniform();
        const double y = b.uniform();
        const double z = c.uniform();
        all_in_range = all_in_range && x >= 0.0 && x < 1.0;
        identical = identical && (x == y);
        differs = differs || (x != z);
    }
    CHECK(all_in_range);
    CHECK(identical);
    CHECK(differs);
}

TEST_CASE("ranged uniform respects bounds and validates them", "[random]") {
    Rng rng(7);
    for (int i = 0; i < 200; ++i) {
        const double x = rng.uniform(-3.0, 5.5);
        REQUIRE(x >= -3.0);
        REQUIRE(x < 5.5);
    }
    CHECK(rng.uniform(2.0, 2.0) == 2.0);
    CHECK_THROWS_AS(rng.uniform(1.0, 0.0), std::invalid_argument);
}

TEST_CASE("normal draws have the right first two moments", "[random]") {
    Rng rng(123);
    const int n = 20000;
    double sum = 0.0, sum2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = rng.normal();
        sum += x;
        sum2 += x * x;
    }
    const double mean = sum / n;
    const double var = sum2 / n - mean * mean;
    CHECK(std::abs(mean) < 0.05);
    CHECK(std::abs(var - 1.0) < 0.1);
}

TEST_CASE("integer draws are in range and unbiased-ish", "[random]") {
    Rng rng(99);
    std::vector<int> counts(5, 0);
    for (int i = 0; i < 5000; ++i) {
        const std::uint64_t x = rng.integer(5);
        REQUIRE(x < 5);
        ++counts[static_cast<std::size_t>(x)];
    }
    for (int c : counts) CHECK(std::abs(c - 1000) < 150);
    CHECK_THROWS_AS(rng.integer(0), std::invalid_argument);
}

TEST_CASE("weighted index never picks zero-weight entries", "[random]") {
    Rng rng(5);
    const std::vector<double> weights = {0.0, 2.0, 0.0, 1.0, 0.0};
    for (int i = 0; i < 500; ++i) {
        const std::size_t pick = rng.weighted_index(weights);
        CHECK((pick == 1 || pick == 3));
    }
    CHECK_THROWS_AS(rng.weighted_index({1.0, -2.0}), std::invalid_argument);
}

TEST_CASE("seed mixing separates streams", "[random]") {
    std::set<std::uint64_t> seen;
    for (std::uint64_t s = 0; s < 64; ++s)
        for (std::uint64_t t = 0; t < 8; ++t) seen.insert(phkm::mix_seed(s, t));
    CHECK(seen.size() == 64 * 8);
    CHECK(phkm::mix_seed(1, 2, 3) != phkm::mix_seed(1, 3, 2));
}
