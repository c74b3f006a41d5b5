#pragma once

// Closed-form lower bounds on perm_m and the expectation formulas for the
// regular bipartite random model.  Exact formulas stay rational; the bounds
// with large exponentials are evaluated in the log domain so they survive n
// in the thousands (the Stirling convergence checks need that).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "matchkit/combinatorics.hpp"
#include "matchkit/rational.hpp"

namespace matchkit {

inline double log_binomial(double n, double m) {
    return std::lgamma(n + 1.0) - std::lgamma(m + 1.0) - std::lgamma(n - m + 1.0);
}

/// Friedland-Tverberg lower bound C(n,m)^2 m!/n^m on perm_m over the doubly
/// stochastic matrices; attained exactly at the flat matrix J_n.
inline Rat ft_lower_bound(std::size_t n, std::size_t m) {
    if (m < 1 || m > n) throw std::invalid_argument("ft_lower_bound: m out of range");
    Int c = binomial(n, m);
    return Rat(c * c * factorial(m), int_pow(Int(n), m));
}

/// Matching count bound for r-regular bipartite (multi)graphs:
/// phi_G(m) >= C(n,m)^2 m! r^m / n^m.
inline Rat matching_lower_bound(std::size_t n, std::size_t m, std::size_t r) {
    if (r < 1) throw std::invalid_argument("matching_lower_bound: r must be >= 1");
    return ft_lower_bound(n, m) * Rat(int_pow(Int(r), m));
}

/// Gurvits' sharpening of the permanent lower bound for doubly stochastic
/// matrices with at most r nonzeros per column:
/// perm A >= r!/r^r ((r-1)/r)^{(r-1)(n-r)}.
inline double gurvits_schrijver_bound(std::size_t n, std::size_t r) {
    if (r < 1 || r > n) throw std::invalid_argument("gurvits_schrijver_bound: r out of range");
    double rd = static_cast<double>(r);
    double log_b = std::lgamma(rd + 1.0) - rd * std::log(rd);
    if (r > 1 && n > r)
        log_b += (rd - 1.0) * static_cast<double>(n - r) * std::log((rd - 1.0) / rd);
    return std::exp(log_b);
}

// Per-column degree caps r_1..r_n for a degree-m generating polynomial (for
// p_{m,A} these are the column support sizes).
class RegularityProfile {
public:
    RegularityProfile(std::size_t n, std::size_t m, std::vector<std::size_t> r_list)
        : n_(n), m_(m), r_(std::move(r_list)), sorted_(r_) {
        if (r_.size() != n_) throw std::invalid_argument("RegularityProfile: need n caps");
        if (m_ < 1 || m_ > n_) throw std::invalid_argument("RegularityProfile: m out of range");
        for (std::size_t ri : r_)
            if (ri < 1 || ri > m_)
                throw std::invalid_argument("RegularityProfile: caps must lie in [1, m]");
        std::sort(sorted_.begin(), sorted_.end());
    }

    std::size_t n() const { return n_; }
    std::size_t m() const { return m_; }
    const std::vector<std::size_t>& caps() const { return r_; }
    const std::vector<std::size_t>& sorted_caps() const { return sorted_; }

    /// Smallest k in [1, n] with r*_k > m - k.
    std::size_t threshold() const {
        for (std::size_t k = 1; k <= n_; ++k)
            if (static_cast<long>(sorted_[k - 1]) > static_cast<long>(m_) - static_cast<long>(k))
                return k;
        return n_;  // unreachable: r*_n >= 1 > m - n
    }

    /// Smallest k in [1, n] with r*_k + s > n - k (the slack-s variant).
    std::size_t threshold_with_slack(std::size_t s) const {
        for (std::size_t k = 1; k <= n_; ++k)
            if (static_cast<long>(sorted_[k - 1] + s) >
                static_cast<long>(n_) - static_cast<long>(k))
                return k;
        return n_;
    }

private:
    std::size_t n_, m_;
    std::vector<std::size_t> r_, sorted_;
};

/// Degree-capped generalization of the FT bound: a lower bound on the sum of
/// all order-m mixed partials of p at 0, given Cap p, namely
///   n^{n-m}/(n-m)! * (n-k+1)!/(n-k+1)^{n-k+1}
///   * prod_{j<k} ((r*_j+n-m-1)/(r*_j+n-m))^{r*_j+n-m-1} * Cap p,
/// with 0^0 = 1 and an empty product for k = 1.
inline double generalized_ft_bound(const RegularityProfile& profile, double cap) {
    if (cap < 0) throw std::invalid_argument("generalized_ft_bound: negative capacity");
    if (cap == 0) return 0.0;
    double n = static_cast<double>(profile.n());
    double m = static_cast<double>(profile.m());
    std::size_t k = profile.threshold();
    double nk = n - static_cast<double>(k) + 1.0;

    double log_b = (n - m) * std::log(n) - std::lgamma(n - m + 1.0);
    log_b += std::lgamma(nk + 1.0) - nk * std::log(nk);
    for (std::size_t j = 1; j < k; ++j) {
        double e = static_cast<double>(profile.sorted_caps()[j - 1]) + n - m - 1.0;
        if (e > 0) log_b += e * std::log(e / (e + 1.0));
        // e == 0 contributes 0^0 = 1
    }
    return std::exp(log_b + std::log(cap));
}

/// Slack-s lower bound on perm_m B for doubly stochastic B with at most r
/// nonzeros per column:
///   (sn)! C(n,m) / (s^{n-m} (n-m)! ((s-1)n+m)!)
///   * (r+s)!/(r+s)^{r+s} * ((r+s-1)/(r+s))^{(r+s-1)(n-r-s)}.
inline double slack_lower_bound(std::size_t n, std::size_t m, std::size_t r, std::size_t s) {
    if (s < 1) throw std::invalid_argument("slack_lower_bound: s must be >= 1");
    if (m < 1 || m >= n) throw std::invalid_argument("slack_lower_bound: need 1 <= m < n");
    if (r + s > n) throw std::invalid_argument("slack_lower_bound: need n - r - s + 1 >= 1");
    double nd = n, md = m, rd = r, sd = s;
    double rs = rd + sd;
    double log_b = std::lgamma(sd * nd + 1.0) + log_binomial(nd, md);
    log_b -= (nd - md) * std::log(sd) + std::lgamma(nd - md + 1.0) +
             std::lgamma((sd - 1.0) * nd + md + 1.0);
    log_b += std::lgamma(rs + 1.0) - rs * std::log(rs);
    log_b += (rs - 1.0) * (nd - rs) * std::log((rs - 1.0) / rs);
    return std::exp(log_b);
}

/// Expected perm_m over the r-regular bipartite configuration model:
/// C(n,m)^2 r^{2m} m! (rn-m)!/(rn)!.
inline Rat expected_perm_m(std::size_t n, std::size_t r, std::size_t m) {
    if (m > n) throw std::invalid_argument("expected_perm_m: m out of range");
    if (r < 1) throw std::invalid_argument("expected_perm_m: r must be >= 1");
    if (m == 0) return 1;  // perm_0 = 1
    Int c = binomial(n, m);
    Rat value(c * c * int_pow(Int(r), 2 * m) * factorial(m), 1);
    // (rn-m)!/(rn)! = 1 / ((rn)(rn-1)...(rn-m+1))
    Int fall = 1;
    for (std::size_t i = 0; i < m; ++i) fall *= Int(r * n - i);
    return value / Rat(fall);
}

/// Expected number of m-matchings covering one fixed column set J, |J| = m:
/// C(n,m) r^{2m} m! (rn-m)!/(rn)! (the previous expectation divided by C(n,m)).
inline Rat expected_perm_m_fixed_J(std::size_t n, std::size_t r, std::size_t m) {
    Rat e = expected_perm_m(n, r, m);
    if (m == 0) return e;
    return e / Rat(binomial(n, m));
}

/// Newton/AM-GM step used at dimer density 1:
/// perm_m B >= C(n,m) (perm B)^{m/n}.
inline double newton_amgm_bound(double perm_total, std::size_t n, std::size_t m) {
    if (perm_total < 0) throw std::invalid_argument("newton_amgm_bound: negative permanent");
    if (m > n || n == 0) throw std::invalid_argument("newton_amgm_bound: m out of range");
    if (perm_total == 0) return 0.0;
    double log_b = log_binomial(static_cast<double>(n), static_cast<double>(m)) +
                   (static_cast<double>(m) / static_cast<double>(n)) * std::log(perm_total);
    return std::exp(log_b);
}

}  // namespace matchkit
