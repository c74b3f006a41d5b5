#pragma once

// Exact computation of perm_m, haf_m, and matching polynomials.
//
// The production path evaluates a generating polynomial on all 0/1 points of
// Hamming weight < deg and cancels the sub-multilinear mass with an integer
// coefficient vector d_n; the brute-force oracles enumerate minors/matchings
// directly and exist so every result can be re-derived independently.

#include <cstddef>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "matchkit/combinatorics.hpp"
#include "matchkit/graph.hpp"
#include "matchkit/matrix.hpp"
#include "matchkit/oracle.hpp"
#include "matchkit/rational.hpp"

namespace matchkit {

// Integer cancellation vector d_n = (d_{n,1}, ..., d_{n,m-1}) solving
// d_n A = (-1,...,-1) for the lower-triangular a_{ij} = C(n-j, i-j).
struct RyserCoefficients {
    std::size_t n = 0;  // variable count
    std::size_t m = 0;  // target degree
    std::vector<Int> d; // d[j-1] = d_{n,j}, size m-1
};

/// Solves the unit-diagonal triangular system exactly, columns j = m-1 down
/// to 1, so every component is an integer.
inline RyserCoefficients ryser_coefficients(std::size_t n, std::size_t m) {
    if (m > n) throw std::invalid_argument("ryser_coefficients: m > n");
    RyserCoefficients rc;
    rc.n = n;
    rc.m = m;
    if (m < 2) return rc;  // empty system
    rc.d.assign(m - 1, Int(0));
    for (std::size_t j = m - 1; j >= 1; --j) {
        Int acc = -1;  // column j target
        for (std::size_t i = j + 1; i <= m - 1; ++i)
            acc -= rc.d[i - 1] * binomial(static_cast<long long>(n - j),
                                          static_cast<long long>(i - j));
        rc.d[j - 1] = acc;  // a_{jj} = C(n-j, 0) = 1
    }
    return rc;
}

/// s_i = sum of p over all 0/1 vectors of Hamming weight i, for i = 1..max_weight.
inline std::vector<Rat> weight_sums(const PolynomialOracle& p, std::size_t max_weight) {
    std::size_t n = p.variable_count();
    if (max_weight > n) throw std::invalid_argument("weight_sums: max_weight > n");
    std::vector<Rat> s(max_weight, Rat(0));
    std::vector<Rat> point(n, Rat(0));
    for (std::size_t i = 1; i <= max_weight; ++i) {
        Rat acc = 0;
        for (SubsetIterator it(n, i); !it.done(); it.advance()) {
            for (std::size_t idx : *it) point[idx] = 1;
            acc += p(point);
            for (std::size_t idx : *it) point[idx] = 0;
        }
        s[i - 1] = acc;
    }
    return s;
}

/// Sum of the coefficients of all multilinear degree-m monomials of p,
/// i.e. the sum of partial derivatives d^m p / dx_{i_1}..dx_{i_m} at 0 over
/// all index m-subsets.  Exactly 1 + sum_{j=1}^{m-1} C(n,j) oracle calls.
inline Rat multilinear_sum(const PolynomialOracle& p) {
    std::size_t n = p.variable_count();
    std::size_t m = p.degree();
    if (m > n) throw std::invalid_argument("multilinear_sum: degree exceeds variable count");
    if (m == 0) return 0;  // homogeneous with p(0) = 0 means p == 0
    Rat total = p(std::vector<Rat>(n, Rat(1)));
    if (m == 1) return total;  // no correction terms; p(1,..,1) = sum_i p(e_i)
    RyserCoefficients rc = ryser_coefficients(n, m);
    std::vector<Rat> s = weight_sums(p, m - 1);
    for (std::size_t j = 1; j <= m - 1; ++j) total += s[j - 1] * Rat(rc.d[j - 1]);
    return total;
}

namespace detail {

// Row-major dense accessor used by the enumeration kernels.
template <class T>
struct DenseView {
    const std::vector<T>* entries;
    std::size_t cols;
    const T& operator()(std::size_t i, std::size_t j) const { return (*entries)[i * cols + j]; }
};

// Permanent of the block rows x cols, by recursive enumeration of bijections
// with zero pruning.  T is Rat in general, Int for all-integer matrices.
template <class T>
T block_permanent(const DenseView<T>& a, const std::vector<std::size_t>& rows,
                  const std::vector<std::size_t>& cols, std::size_t col, std::uint64_t used) {
    std::size_t m = rows.size();
    if (col == m) return T(1);
    T total(0);
    for (std::size_t r = 0; r < m; ++r) {
        if (used & (std::uint64_t(1) << r)) continue;
        const T& entry = a(rows[r], cols[col]);
        if (entry == 0) continue;
        total += entry * block_permanent<T>(a, rows, cols, col + 1, used | (std::uint64_t(1) << r));
    }
    return total;
}

template <class T>
std::vector<T> dense_copy(const RationalMatrix& a);

template <>
inline std::vector<Rat> dense_copy<Rat>(const RationalMatrix& a) {
    return a.entries();
}

template <>
inline std::vector<Int> dense_copy<Int>(const RationalMatrix& a) {
    std::vector<Int> out;
    out.reserve(a.entries().size());
    for (const Rat& e : a.entries()) out.push_back(numerator(e));
    return out;
}

// Sums block permanents over all row m-subsets (and all column m-subsets when
// cover is empty, else the fixed column set cover).
template <class T>
T sum_block_permanents(const RationalMatrix& a, std::size_t m,
                       const std::vector<std::size_t>& cover) {
    std::size_t n = a.rows();
    std::vector<T> dense = dense_copy<T>(a);
    DenseView<T> view{&dense, n};
    T total(0);
    for (SubsetIterator rows(n, m); !rows.done(); rows.advance()) {
        if (!cover.empty()) {
            total += block_permanent<T>(view, *rows, cover, 0, 0u);
        } else {
            for (SubsetIterator cols(n, m); !cols.done(); cols.advance())
                total += block_permanent<T>(view, *rows, *cols, 0, 0u);
        }
    }
    return total;
}

inline void check_budget(const Int& terms) {
    if (terms > 100000000) throw std::runtime_error("brute force enumeration budget exceeded");
}

}  // namespace detail

/// Generating polynomial p_m(x) = S_m(A x) for perm_m, degree m in n variables.
inline PolynomialOracle perm_m_oracle(const RationalMatrix& a, std::size_t m) {
    if (!a.square()) throw std::invalid_argument("perm_m_oracle: matrix not square");
    std::size_t n = a.rows();
    if (m < 1 || m > n) throw std::invalid_argument("perm_m_oracle: m out of range");
    return PolynomialOracle(n, m, [a, m](const std::vector<Rat>& x) {
        std::size_t n = a.rows();
        std::vector<Rat> ax(n, Rat(0));
        for (std::size_t i = 0; i < n; ++i) {
            Rat acc = 0;
            for (std::size_t j = 0; j < n; ++j) {
                const Rat& e = a(i, j);
                if (e == 0 || x[j] == 0) continue;
                acc += e * x[j];
            }
            ax[i] = std::move(acc);
        }
        return elementary_symmetric(ax, m);
    });
}

/// perm_m A: the sum of all m x m subpermanents, computed exactly through the
/// evaluation formula (1 + sum_{j<m} C(n,j) oracle calls, each O(n^2)).
inline Rat perm_m(const RationalMatrix& a, std::size_t m) {
    return multilinear_sum(perm_m_oracle(a, m));
}

/// Independent oracle: direct enumeration of row subsets I, column subsets J,
/// and bijections between them.
inline Rat brute_force_perm_m(const RationalMatrix& a, std::size_t m) {
    if (!a.square()) throw std::invalid_argument("brute_force_perm_m: matrix not square");
    std::size_t n = a.rows();
    if (m < 1 || m > n) throw std::invalid_argument("brute_force_perm_m: m out of range");
    detail::check_budget(binomial(n, m) * binomial(n, m) * factorial(m));
    if (a.all_integer()) return Rat(detail::sum_block_permanents<Int>(a, m, {}));
    return detail::sum_block_permanents<Rat>(a, m, {});
}

/// perm_m A[<n>|J]: m-matchings covering the fixed column set J, i.e. the sum
/// over all row subsets I of perm A[I|J].
inline Rat perm_m_cover(const RationalMatrix& a, const std::vector<std::size_t>& cover) {
    if (!a.square()) throw std::invalid_argument("perm_m_cover: matrix not square");
    std::size_t n = a.rows();
    std::size_t m = cover.size();
    if (m == 0 || m > n) throw std::invalid_argument("perm_m_cover: bad column set size");
    for (std::size_t j : cover)
        if (j >= n) throw std::invalid_argument("perm_m_cover: column index out of range");
    if (a.all_integer()) return Rat(detail::sum_block_permanents<Int>(a, m, cover));
    return detail::sum_block_permanents<Rat>(a, m, cover);
}

/// Generating polynomial P_m(x) = (x^T B x)^m / (2^m m!) for haf_m, degree 2m
/// in N variables.  Uses the zero-diagonal view of B.
inline PolynomialOracle haf_m_oracle(const SymmetricMatrix& b_in, std::size_t m) {
    std::size_t n = b_in.dim();
    if (m < 1 || 2 * m > n) throw std::invalid_argument("haf_m_oracle: need 1 <= 2m <= N");
    SymmetricMatrix b = b_in.zero_diagonal();
    Rat scale = Rat(1, int_pow(2, m) * factorial(m));
    return PolynomialOracle(n, 2 * m, [b, m, scale](const std::vector<Rat>& x) {
        std::size_t n = b.dim();
        Rat quad = 0;  // x^T B x with zero diagonal = 2 * sum_{i<j} b_ij x_i x_j
        for (std::size_t i = 0; i < n; ++i) {
            if (x[i] == 0) continue;
            for (std::size_t j = i + 1; j < n; ++j) {
                const Rat& e = b(i, j);
                if (e == 0 || x[j] == 0) continue;
                quad += 2 * e * x[i] * x[j];
            }
        }
        return scale * rat_pow(quad, m);
    });
}

/// haf_m B: the sum over all m-matchings of K_N of the edge-entry products.
/// Diagonal entries of B are ignored.
inline Rat haf_m(const SymmetricMatrix& b, std::size_t m) {
    return multilinear_sum(haf_m_oracle(b, m));
}

namespace detail {

inline void matchings_rec(const SymmetricMatrix& b, std::size_t v, std::size_t left,
                          std::vector<char>& used, const Rat& prod, Rat& total) {
    if (left == 0) {
        total += prod;
        return;
    }
    std::size_t n = b.dim();
    if (v >= n || n - v < 2 * left) return;
    if (used[v]) {
        matchings_rec(b, v + 1, left, used, prod, total);
        return;
    }
    matchings_rec(b, v + 1, left, used, prod, total);  // v stays a monomer
    for (std::size_t u = v + 1; u < n; ++u) {
        if (used[u]) continue;
        const Rat& e = b(v, u);
        if (e == 0) continue;
        used[u] = 1;
        matchings_rec(b, v + 1, left - 1, used, prod * e, total);
        used[u] = 0;
    }
}

}  // namespace detail

/// Independent oracle: enumerate the m-matchings of K_N directly.
inline Rat brute_force_haf_m(const SymmetricMatrix& b, std::size_t m) {
    std::size_t n = b.dim();
    if (m < 1 || 2 * m > n) throw std::invalid_argument("brute_force_haf_m: need 1 <= 2m <= N");
    detail::check_budget(binomial(n, 2 * m) * factorial(2 * m) /
                         (int_pow(2, m) * factorial(m)));
    Rat total = 0;
    std::vector<char> used(n, 0);
    detail::matchings_rec(b, 0, m, used, Rat(1), total);
    return total;
}

// Matching generating polynomial Phi_G(x) = sum_k phi_G(k) x^k.
struct MatchingPolynomial {
    std::size_t order = 0;       // n for bipartite on n+n, N for general graphs
    std::vector<Rat> coeffs;     // coeffs[k] = phi_G(k); coeffs[0] == 1

    std::size_t max_matching() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }

    Rat evaluate(const Rat& x) const {
        Rat acc = 0;
        for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * x + coeffs[k];
        return acc;
    }
};

/// phi sequence of the bipartite (multi)graph with incidence matrix A:
/// phi(k) = perm_k A.
inline MatchingPolynomial matching_sequence(const RationalMatrix& a) {
    if (!a.square()) throw std::invalid_argument("matching_sequence: matrix not square");
    MatchingPolynomial phi;
    phi.order = a.rows();
    phi.coeffs.push_back(1);
    for (std::size_t k = 1; k <= a.rows(); ++k) phi.coeffs.push_back(perm_m(a, k));
    return phi;
}

/// phi sequence of a general graph: phi(k) = haf_k B(G).
inline MatchingPolynomial matching_sequence(const SimpleGraph& g) {
    SymmetricMatrix b = graph_to_adjacency(g);
    MatchingPolynomial phi;
    phi.order = g.vertex_count();
    phi.coeffs.push_back(1);
    for (std::size_t k = 1; 2 * k <= g.vertex_count(); ++k)
        phi.coeffs.push_back(haf_m(b, k));
    return phi;
}

/// Signed polynomial x^n - perm_1(B) x^{n-1} + perm_2(B) x^{n-2} - ...
/// (ascending coefficient order).  Real-rooted with nonnegative roots for
/// nonnegative B by Heilmann-Lieb.
inline std::vector<Rat> signed_matching_polynomial(const RationalMatrix& b) {
    if (!b.square()) throw std::invalid_argument("signed_matching_polynomial: matrix not square");
    std::size_t n = b.rows();
    std::vector<Rat> coeffs(n + 1, Rat(0));
    coeffs[n] = 1;
    for (std::size_t m = 1; m <= n; ++m) {
        Rat c = perm_m(b, m);
        coeffs[n - m] = (m % 2 == 0) ? c : -c;
    }
    return coeffs;
}

}  // namespace matchkit
