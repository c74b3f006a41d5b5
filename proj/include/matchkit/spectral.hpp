#pragma once

// Spectra of symmetric matrices (cyclic Jacobi) and the two equivalent
// characterizations of positive hyperbolicity of x^T B x: the spectral test
// (lambda_2 <= 0 on a nonnegative nonzero B) and, for graphs, the complete
// multipartite classification.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "matchkit/graph.hpp"
#include "matchkit/matrix.hpp"

namespace matchkit {

struct Spectrum {
    std::vector<double> eigenvalues;  // sorted descending

    double lambda(std::size_t k) const {  // 1-based, lambda(1) largest
        if (k < 1 || k > eigenvalues.size()) throw std::out_of_range("Spectrum::lambda");
        return eigenvalues[k - 1];
    }
};

namespace detail {

/// Cyclic Jacobi sweeps on a dense symmetric matrix (row-major, modified in
/// place).  Stops when the off-diagonal Frobenius norm drops below
/// 1e-12 * ||B||_F.
inline void jacobi_diagonalize(std::vector<double>& a, std::size_t n) {
    if (n < 2) return;
    double norm = 0;
    for (double v : a) norm += v * v;
    norm = std::sqrt(norm);
    double threshold = 1e-12 * norm;
    if (norm == 0) return;

    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += 2 * a[p * n + q] * a[p * n + q];
        if (std::sqrt(off) <= threshold) return;

        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                double apq = a[p * n + q];
                if (apq == 0) continue;
                double app = a[p * n + p], aqq = a[q * n + q];
                double theta = (aqq - app) / (2 * apq);
                double t = (theta >= 0 ? 1.0 : -1.0) /
                           (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;
                for (std::size_t i = 0; i < n; ++i) {
                    double aip = a[i * n + p], aiq = a[i * n + q];
                    a[i * n + p] = c * aip - s * aiq;
                    a[i * n + q] = s * aip + c * aiq;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    double api = a[p * n + i], aqi = a[q * n + i];
                    a[p * n + i] = c * api - s * aqi;
                    a[q * n + i] = s * api + c * aqi;
                }
            }
        }
    }
}

}  // namespace detail

/// All eigenvalues of a symmetric matrix, descending.
inline Spectrum symmetric_eigenvalues(const SymmetricMatrix& b) {
    std::size_t n = b.dim();
    std::vector<double> a = b.to_doubles();
    detail::jacobi_diagonalize(a, n);
    Spectrum s;
    s.eigenvalues.resize(n);
    for (std::size_t i = 0; i < n; ++i) s.eigenvalues[i] = a[i * n + i];
    std::sort(s.eigenvalues.begin(), s.eigenvalues.end(), std::greater<>());
    return s;
}

/// Spectral hyperbolicity test for the quadratic form x^T B x: true iff B is
/// entrywise nonnegative, nonzero, and lambda_2(B) <= tol.  The matrix is
/// normalized to unit max entry before the eigenvalue comparison.
inline bool is_quadratic_hyperbolic(const SymmetricMatrix& b, double tol = 1e-9) {
    if (!b.nonnegative()) return false;
    if (b.zero()) return false;
    if (b.dim() < 2) return true;  // lambda_2 condition is vacuous for a 1x1 form
    Rat max_entry = 0;
    for (std::size_t i = 0; i < b.dim(); ++i)
        for (std::size_t j = 0; j < b.dim(); ++j) max_entry = std::max(max_entry, b(i, j));
    SymmetricMatrix scaled(b.dim());
    for (std::size_t i = 0; i < b.dim(); ++i)
        for (std::size_t j = i; j < b.dim(); ++j) scaled.set(i, j, b(i, j) / max_entry);
    return symmetric_eigenvalues(scaled).lambda(2) <= tol;
}

struct MultipartiteClassification {
    bool is_complete_multipartite = false;
    std::vector<std::vector<std::size_t>> classes;  // partition of non-isolated vertices
    std::vector<std::size_t> isolated;
};

/// Strips isolated vertices, then checks that non-adjacency is transitive on
/// the remainder (equivalently: the complement of the remainder is a disjoint
/// union of cliques).  On success the equivalence classes are the partition
/// classes of a complete multipartite graph.
inline MultipartiteClassification classify_complete_multipartite(const SimpleGraph& g) {
    std::size_t n = g.vertex_count();
    MultipartiteClassification out;
    std::vector<std::size_t> active;
    for (std::size_t v = 0; v < n; ++v) {
        if (g.degree(v) == 0)
            out.isolated.push_back(v);
        else
            active.push_back(v);
    }
    if (active.empty()) return out;  // no edges at all: not complete multipartite

    std::vector<long> cls(n, -1);
    for (std::size_t u : active) {
        if (cls[u] >= 0) continue;
        long id = static_cast<long>(out.classes.size());
        out.classes.emplace_back();
        for (std::size_t v : active) {
            if (v == u || !g.has_edge(u, v)) {
                if (cls[v] >= 0) return out;  // v already claimed: relation not transitive
                cls[v] = id;
                out.classes.back().push_back(v);
            }
        }
    }
    // Same class must mean non-adjacent and different class must mean adjacent;
    // anything else is a transitivity violation.
    for (std::size_t u : active)
        for (std::size_t v : active)
            if (u < v && (cls[u] == cls[v]) == g.has_edge(u, v)) return out;

    out.is_complete_multipartite = true;
    return out;
}

/// Theorem-level consistency check: the spectral route (at least one edge and
/// lambda_2(A(G)) <= 1e-9) must agree with the combinatorial classification.
inline bool hyperbolicity_cross_check(const SimpleGraph& g) {
    bool spectral = g.edge_count() > 0 && is_quadratic_hyperbolic(graph_to_adjacency(g));
    bool combinatorial = classify_complete_multipartite(g).is_complete_multipartite;
    return spectral == combinatorial;
}

}  // namespace matchkit
