#pragma once

// Exact real-root counting for rational polynomials via Sturm sequences.
// Coefficients are ascending: poly[k] is the coefficient of x^k.

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "matchkit/rational.hpp"

namespace matchkit {

using RatPoly = std::vector<Rat>;

inline RatPoly trim(RatPoly p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
    return p;
}

inline long poly_degree(const RatPoly& p) {
    return static_cast<long>(p.size()) - 1;  // -1 for the zero polynomial
}

inline RatPoly derivative(const RatPoly& p) {
    RatPoly d;
    for (std::size_t k = 1; k < p.size(); ++k) d.push_back(Rat(Int(k)) * p[k]);
    return trim(std::move(d));
}

/// Remainder of a by b under exact rational division.  b must be nonzero.
inline RatPoly poly_remainder(RatPoly a, const RatPoly& b) {
    if (b.empty()) throw std::invalid_argument("poly_remainder: division by zero polynomial");
    while (a.size() >= b.size()) {
        Rat q = a.back() / b.back();
        std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= q * b[i];
        a.pop_back();  // leading term cancels exactly
        a = trim(std::move(a));
        if (a.empty()) break;
    }
    return a;
}

/// Canonical Sturm chain p, p', -rem(...), ...; the last element is +-gcd(p, p').
inline std::vector<RatPoly> sturm_chain(const RatPoly& p) {
    std::vector<RatPoly> chain;
    chain.push_back(trim(p));
    RatPoly d = derivative(chain[0]);
    if (d.empty()) return chain;
    chain.push_back(std::move(d));
    while (true) {
        RatPoly r = poly_remainder(chain[chain.size() - 2], chain.back());
        if (r.empty()) break;
        for (Rat& c : r) c = -c;
        chain.push_back(std::move(r));
    }
    return chain;
}

namespace detail {

// Sign of q at +infinity (dir = +1) or -infinity (dir = -1).
inline int sign_at_infinity(const RatPoly& q, int dir) {
    if (q.empty()) return 0;
    int s = q.back() > 0 ? 1 : -1;
    if (dir < 0 && (q.size() - 1) % 2 == 1) s = -s;
    return s;
}

inline int sign_variations_at_infinity(const std::vector<RatPoly>& chain, int dir) {
    int count = 0, prev = 0;
    for (const RatPoly& q : chain) {
        int s = sign_at_infinity(q, dir);
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++count;
        prev = s;
    }
    return count;
}

}  // namespace detail

/// Number of distinct real roots of p (Sturm's theorem over (-inf, inf)).
inline long count_distinct_real_roots(const RatPoly& p_in) {
    RatPoly p = trim(p_in);
    if (p.empty()) throw std::invalid_argument("count_distinct_real_roots: zero polynomial");
    if (p.size() == 1) return 0;
    std::vector<RatPoly> chain = sturm_chain(p);
    return detail::sign_variations_at_infinity(chain, -1) -
           detail::sign_variations_at_infinity(chain, +1);
}

/// True iff every complex root of p is real (multiplicities allowed: p is
/// compared against its square-free part, whose degree falls out of the chain
/// because the last chain element is the gcd of p and p').
inline bool check_real_rooted(const RatPoly& p_in) {
    RatPoly p = trim(p_in);
    if (p.empty()) throw std::invalid_argument("check_real_rooted: zero polynomial");
    if (p.size() == 1) return true;  // nonzero constant
    std::vector<RatPoly> chain = sturm_chain(p);
    long distinct = detail::sign_variations_at_infinity(chain, -1) -
                    detail::sign_variations_at_infinity(chain, +1);
    long gcd_degree = poly_degree(chain.back());
    long squarefree_degree = poly_degree(p) - gcd_degree;
    return distinct == squarefree_degree;
}

}  // namespace matchkit
