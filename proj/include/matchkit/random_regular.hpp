#pragma once

// The configuration model on r-regular bipartite multigraphs: a uniform
// random perfect matching between the rn left half-edge slots and the rn
// right half-edge slots; A_ij counts pairings between the slots of left
// vertex i and right vertex j.  This model reproduces the expectation formula
// C(n,m)^2 r^{2m} m!(rn-m)!/(rn)! exactly (a sum of r independent permutation
// matrices does not).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <stdexcept>
#include <vector>

#include "matchkit/capacity.hpp"
#include "matchkit/exact.hpp"
#include "matchkit/matrix.hpp"
#include "matchkit/rational.hpp"

namespace matchkit {

/// SplitMix64 mix; used to derive independent per-trial streams from
/// (seed, trial index) so partitioned runs are reproducible.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

struct ConfigurationSample {
    RationalMatrix a;          // n x n, integer entries, all row/col sums = r
    std::uint64_t seed = 0;
};

/// One draw of the configuration model nu(n, r).
inline ConfigurationSample sample_configuration(std::size_t n, std::size_t r,
                                                std::mt19937_64& rng) {
    if (n < 1 || r < 1) throw std::invalid_argument("sample_configuration: need n, r >= 1");
    std::vector<std::size_t> right(n * r);
    std::iota(right.begin(), right.end(), 0);
    std::shuffle(right.begin(), right.end(), rng);
    RationalMatrix a(n, n);
    for (std::size_t slot = 0; slot < n * r; ++slot) {
        std::size_t i = slot / r, j = right[slot] / r;
        a.set(i, j, a(i, j) + 1);
    }
    return ConfigurationSample{std::move(a), 0};
}

namespace detail {

inline long long int_block_permanent(const std::vector<int>& a, std::size_t n,
                                     const std::vector<std::size_t>& rows,
                                     const std::vector<std::size_t>& cols, std::size_t col,
                                     unsigned used) {
    if (col == rows.size()) return 1;
    long long acc = 0;
    for (std::size_t t = 0; t < rows.size(); ++t) {
        if (used & (1u << t)) continue;
        int e = a[rows[t] * n + cols[col]];
        if (e == 0) continue;
        acc += e * int_block_permanent(a, n, rows, cols, col + 1, used | (1u << t));
    }
    return acc;
}

// perm_m over machine integers; entries and totals stay tiny at the
// exhaustive-enumeration scale (rn <= 8).
inline long long perm_m_int(const std::vector<int>& a, std::size_t n, std::size_t m) {
    long long total = 0;
    for (SubsetIterator ri(n, m); !ri.done(); ri.advance())
        for (SubsetIterator ci(n, m); !ci.done(); ci.advance())
            total += int_block_permanent(a, n, *ri, *ci, 0, 0u);
    return total;
}

}  // namespace detail

/// Exact E[perm_m] over the model by exhausting all (rn)! slot pairings.
/// Feasible for rn <= 8; rejects anything larger.
inline Rat exact_expectation_small(std::size_t n, std::size_t r, std::size_t m) {
    if (n < 1 || r < 1) throw std::invalid_argument("exact_expectation_small: need n, r >= 1");
    if (m > n) throw std::invalid_argument("exact_expectation_small: m out of range");
    std::size_t slots = n * r;
    if (factorial(slots) > 40320)
        throw std::runtime_error("exact_expectation_small: enumeration budget exceeded (rn > 8)");

    std::vector<std::size_t> right(slots);
    std::iota(right.begin(), right.end(), 0);
    std::map<std::vector<int>, long long> histogram;  // matrix -> number of pairings
    do {
        std::vector<int> a(n * n, 0);
        for (std::size_t slot = 0; slot < slots; ++slot) ++a[(slot / r) * n + right[slot] / r];
        ++histogram[a];
    } while (std::next_permutation(right.begin(), right.end()));

    Int numerator = 0;
    for (const auto& [a, count] : histogram)
        numerator += Int(count) * Int(detail::perm_m_int(a, n, m));
    return Rat(numerator, factorial(slots));
}

struct MonteCarloEstimate {
    double mean = 0.0;
    double stderr_of_mean = 0.0;
    std::size_t trials = 0;
};

/// Sample mean and standard error of exact perm_m over configuration-model
/// draws.  Each trial derives its own stream from (seed, trial index), so the
/// output is reproducible and independent of any partitioning of the trials.
inline MonteCarloEstimate monte_carlo_expectation(std::size_t n, std::size_t r, std::size_t m,
                                                  std::size_t trials, std::uint64_t seed) {
    if (trials < 100) throw std::invalid_argument("monte_carlo_expectation: need >= 100 trials");
    if (m > n) throw std::invalid_argument("monte_carlo_expectation: m out of range");
    double sum = 0, sumsq = 0;
    for (std::size_t t = 0; t < trials; ++t) {
        std::mt19937_64 rng(mix_seed(seed, t));
        double x = 1.0;
        if (m >= 1) {
            ConfigurationSample s = sample_configuration(n, r, rng);
            x = to_double(perm_m(s.a, m));
        }
        sum += x;
        sumsq += x * x;
    }
    MonteCarloEstimate est;
    est.trials = trials;
    double td = static_cast<double>(trials);
    est.mean = sum / td;
    double var = std::max(0.0, (sumsq - td * est.mean * est.mean) / (td - 1.0));
    est.stderr_of_mean = std::sqrt(var / td);
    return est;
}

/// Random member of Omega_n up to Sinkhorn tolerance: a strictly positive
/// uniform random matrix rebalanced until all row/column sums are within
/// 1e-12 of 1, returned with exact (binary) rational entries.
inline RationalMatrix sample_random_doubly_stochastic(std::size_t n, std::mt19937_64& rng) {
    if (n < 1) throw std::invalid_argument("sample_random_doubly_stochastic: need n >= 1");
    if (n == 1) return RationalMatrix(1, 1, {Rat(1)});
    std::uniform_real_distribution<double> unit(0.01, 1.0);
    RationalMatrix seed(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) seed.set(i, j, Rat(unit(rng)));
    ScalingResult s = sinkhorn_scale(seed, 1e-13, 100000);
    if (!s.converged)
        throw std::runtime_error("sample_random_doubly_stochastic: Sinkhorn did not converge");
    RationalMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out.set(i, j, Rat(s.scaled[i * n + j]));
    return out;
}

}  // namespace matchkit
