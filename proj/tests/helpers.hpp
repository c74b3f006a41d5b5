#pragma once

// Shared random-instance generators for the test suites.  Seeds are always
// fixed by the caller so every suite is reproducible.

#include <numeric>
#include <random>

#include "matchkit/graph.hpp"
#include "matchkit/matrix.hpp"

namespace testutil {

using matchkit::Int;
using matchkit::Rat;
using matchkit::RationalMatrix;
using matchkit::SimpleGraph;
using matchkit::SymmetricMatrix;

inline RationalMatrix random_integer_matrix(std::size_t n, std::mt19937_64& rng,
                                            int max_entry = 9) {
    std::uniform_int_distribution<int> entry(0, max_entry);
    RationalMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a.set(i, j, entry(rng));
    return a;
}

inline RationalMatrix random_rational_matrix(std::size_t n, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> num(0, 9), den(1, 4);
    RationalMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a.set(i, j, Rat(num(rng), den(rng)));
    return a;
}

inline SymmetricMatrix random_symmetric_01(std::size_t n, std::mt19937_64& rng,
                                           double density = 0.5) {
    std::bernoulli_distribution edge(density);
    SymmetricMatrix b(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
            if (edge(rng)) b.set(i, j, 1);
    return b;
}

inline SimpleGraph random_graph(std::size_t n, std::mt19937_64& rng, double density = 0.5) {
    std::bernoulli_distribution edge(density);
    SimpleGraph g(n);
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v)
            if (edge(rng)) g.add_edge(u, v);
    return g;
}

/// Average of r random permutation matrices: doubly stochastic with at most r
/// nonzeros per column.
inline RationalMatrix random_permutation_average(std::size_t n, std::size_t r,
                                                 std::mt19937_64& rng) {
    RationalMatrix a(n, n);
    std::vector<std::size_t> perm(n);
    for (std::size_t t = 0; t < r; ++t) {
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        for (std::size_t i = 0; i < n; ++i) a.set(i, perm[i], a(i, perm[i]) + Rat(1, Int(r)));
    }
    return a;
}

}  // namespace testutil
