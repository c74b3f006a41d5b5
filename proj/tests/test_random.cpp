#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <map>
#include <numeric>
#include <random>

#include "helpers.hpp"
#include "matchkit/bounds.hpp"
#include "matchkit/exact.hpp"
#include "matchkit/random_regular.hpp"

using namespace matchkit;
using Catch::Approx;

TEST_CASE("configuration samples are r-regular") {
    std::mt19937_64 rng(801);
    for (int trial = 0; trial < 20; ++trial) {
        std::size_t n = 1 + rng() % 6, r = 1 + rng() % 4;
        ConfigurationSample s = sample_configuration(n, r, rng);
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(s.a.row_sum(i) == Rat(Int(r)));
            CHECK(s.a.col_sum(i) == Rat(Int(r)));
        }
    }
}

TEST_CASE("single-vertex model is deterministic") {
    std::mt19937_64 rng(802);
    ConfigurationSample s = sample_configuration(1, 3, rng);
    CHECK(s.a(0, 0) == 3);
}

TEST_CASE("pairing distribution for n = r = 2") {
    // Exhaustively: 16 of the 24 pairings give the flat matrix [[1,1],[1,1]].
    std::vector<std::size_t> right{0, 1, 2, 3};
    std::map<std::vector<int>, int> hist;
    do {
        std::vector<int> a(4, 0);
        for (std::size_t slot = 0; slot < 4; ++slot) ++a[(slot / 2) * 2 + right[slot] / 2];
        ++hist[a];
    } while (std::next_permutation(right.begin(), right.end()));
    CHECK(hist[{1, 1, 1, 1}] == 16);
    CHECK(hist[{2, 0, 0, 2}] == 4);
    CHECK(hist[{0, 2, 2, 0}] == 4);

    // Invariance of the distribution under the left and right permutation
    // actions (all nontrivial elements for n = 2).
    for (const auto& [a, count] : hist) {
        std::vector<int> row_swap{a[2], a[3], a[0], a[1]};
        std::vector<int> col_swap{a[1], a[0], a[3], a[2]};
        std::vector<int> both{a[3], a[2], a[1], a[0]};
        for (const auto& image : {row_swap, col_swap, both}) {
            auto it = hist.find(image);
            REQUIRE(it != hist.end());
            CHECK(it->second == count);
        }
    }
}

TEST_CASE("exhaustive expectation matches the closed formula") {
    CHECK(exact_expectation_small(2, 2, 2) == Rat(8, 3));
    CHECK(exact_expectation_small(2, 1, 1) == 2);
    CHECK(exact_expectation_small(2, 2, 1) == 4);

    for (std::size_t n = 1; n <= 8; ++n) {
        for (std::size_t r = 1; n * r <= 8; ++r) {
            for (std::size_t m = 0; m <= n; ++m)
                CHECK(exact_expectation_small(n, r, m) == expected_perm_m(n, r, m));
        }
    }

    CHECK_THROWS_AS(exact_expectation_small(3, 3, 1), std::runtime_error);
}

TEST_CASE("monte carlo expectation honors seed and degenerate m") {
    MonteCarloEstimate zero = monte_carlo_expectation(4, 2, 0, 200, 42);
    CHECK(zero.mean == 1.0);
    CHECK(zero.stderr_of_mean == 0.0);

    MonteCarloEstimate a = monte_carlo_expectation(3, 2, 2, 300, 7);
    MonteCarloEstimate b = monte_carlo_expectation(3, 2, 2, 300, 7);
    CHECK(a.mean == b.mean);
    CHECK(a.stderr_of_mean == b.stderr_of_mean);

    MonteCarloEstimate c = monte_carlo_expectation(3, 2, 2, 2000, 11);
    double formula = to_double(expected_perm_m(3, 2, 2));
    CHECK(std::abs(c.mean - formula) <= 3.5 * c.stderr_of_mean);

    CHECK_THROWS_AS(monte_carlo_expectation(3, 2, 2, 10, 1), std::invalid_argument);
}

TEST_CASE("random doubly stochastic samples") {
    std::mt19937_64 rng(803);
    CHECK(sample_random_doubly_stochastic(1, rng) == RationalMatrix(1, 1, {Rat(1)}));
    for (int trial = 0; trial < 8; ++trial) {
        std::size_t n = 2 + rng() % 5;
        RationalMatrix b = sample_random_doubly_stochastic(n, rng);
        CHECK(is_doubly_stochastic(b, 1e-10));
        for (std::size_t m = 1; m <= n; ++m) {
            Rat slack = ft_lower_bound(n, m) * Rat(1, Int("100000000"));
            CHECK(perm_m(b, m) >= ft_lower_bound(n, m) - slack);
        }
    }
}
