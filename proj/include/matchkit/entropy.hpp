#pragma once

// Monomer-dimer entropy curves: the FT curve fh_r, the expectation curve
// gh_r, and the K_{r,r}-union curve h_K (pressure plus Legendre inversion),
// with the slack-s asymptotic bound.  Conventions: 0 log 0 = 0, natural logs,
// per-vertex normalization (the leading 1/2).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "matchkit/combinatorics.hpp"
#include "matchkit/rational.hpp"

namespace matchkit {

namespace detail {

inline double xlogx(double x) { return x > 0 ? x * std::log(x) : 0.0; }

inline void require_density(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("dimer density must lie in [0, 1]");
}

// log coefficient C(r,k)^2 k! of the K_{r,r} matching polynomial.
inline double log_match_coeff(std::size_t r, std::size_t k) {
    double rd = static_cast<double>(r), kd = static_cast<double>(k);
    return 2.0 * (std::lgamma(rd + 1.0) - std::lgamma(kd + 1.0) - std::lgamma(rd - kd + 1.0)) +
           std::lgamma(kd + 1.0);
}

}  // namespace detail

/// FT entropy curve:
/// fh_r(p) = (1/2)(-p log p - 2(1-p) log(1-p) + p log r - p).
inline double fh(std::size_t r, double p) {
    if (r < 1) throw std::invalid_argument("fh: r must be >= 1");
    detail::require_density(p);
    return 0.5 * (-detail::xlogx(p) - 2.0 * detail::xlogx(1.0 - p) +
                  p * std::log(static_cast<double>(r)) - p);
}

/// Expected-count entropy curve:
/// gh_r(p) = (1/2)(p log r - p log p - 2(1-p) log(1-p) + (r-p) log(1-p/r)).
inline double gh(std::size_t r, double p) {
    if (r < 1) throw std::invalid_argument("gh: r must be >= 1");
    detail::require_density(p);
    double rd = static_cast<double>(r);
    return 0.5 * (p * std::log(rd) - detail::xlogx(p) - 2.0 * detail::xlogx(1.0 - p) +
                  (rd - p) * std::log(1.0 - p / rd));
}

/// Pressure of the countable union of K_{r,r}:
/// P_{K(r)}(t) = log( sum_k C(r,k)^2 k! e^{2kt} ) / (2r), log-sum-exp stabilized.
inline double pressure_K(std::size_t r, double t) {
    if (r < 1) throw std::invalid_argument("pressure_K: r must be >= 1");
    double peak = -std::numeric_limits<double>::infinity();
    std::vector<double> a(r + 1);
    for (std::size_t k = 0; k <= r; ++k) {
        a[k] = detail::log_match_coeff(r, k) + 2.0 * static_cast<double>(k) * t;
        peak = std::max(peak, a[k]);
    }
    double acc = 0;
    for (double v : a) acc += std::exp(v - peak);
    return (peak + std::log(acc)) / (2.0 * static_cast<double>(r));
}

/// Dimer density p(t) = P'_{K(r)}(t): a strictly increasing map from R onto
/// (0, 1).
inline double dimer_density(std::size_t r, double t) {
    if (r < 1) throw std::invalid_argument("dimer_density: r must be >= 1");
    double peak = -std::numeric_limits<double>::infinity();
    std::vector<double> a(r + 1);
    for (std::size_t k = 0; k <= r; ++k) {
        a[k] = detail::log_match_coeff(r, k) + 2.0 * static_cast<double>(k) * t;
        peak = std::max(peak, a[k]);
    }
    double num = 0, den = 0;
    for (std::size_t k = 0; k <= r; ++k) {
        double w = std::exp(a[k] - peak);
        num += static_cast<double>(k) * w;
        den += w;
    }
    return num / (static_cast<double>(r) * den);
}

/// Entropy of dimer density p in the countable union of K_{r,r}:
/// h_{K(r)}(p(t)) = P_{K(r)}(t) - t p(t), inverting p(t) = p by bisection.
/// Endpoints: h_K(r, 0) = 0 and h_K(r, 1) = log(r!)/(2r).
inline double h_K(std::size_t r, double p) {
    if (r < 1) throw std::invalid_argument("h_K: r must be >= 1");
    detail::require_density(p);
    if (p == 0.0) return 0.0;
    if (p == 1.0)
        return std::lgamma(static_cast<double>(r) + 1.0) / (2.0 * static_cast<double>(r));
    double lo = -60.0, hi = 60.0, t = 0.0;
    for (int it = 0; it < 200; ++it) {
        t = 0.5 * (lo + hi);
        double pt = dimer_density(r, t);
        if (std::abs(pt - p) <= 1e-12) break;
        (pt < p ? lo : hi) = t;
    }
    return pressure_K(r, t) - t * dimer_density(r, t);
}

/// Asymptotic slack-s lower bound on the matching entropy at density p for
/// r-regular bipartite sequences:
///   (1/2)(-p log p - 2(1-p) log(1-p))
/// + (1/2)((r+s-1) log(1-1/(r+s)) - (s-1+p) log(1-(1-p)/s)).
/// At p = r/(r+s) it coincides with gh_r(p) - (p/2) log r.
inline double slack_entropy_bound(std::size_t r, std::size_t s, double p) {
    if (r < 3) throw std::invalid_argument("slack_entropy_bound: r must be >= 3");
    if (s < 1) throw std::invalid_argument("slack_entropy_bound: s must be >= 1");
    if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("slack_entropy_bound: p must lie in (0, 1]");
    double rs = static_cast<double>(r + s), sd = static_cast<double>(s);
    double entropy = -detail::xlogx(p) - 2.0 * detail::xlogx(1.0 - p);
    double correction = (rs - 1.0) * std::log(1.0 - 1.0 / rs) -
                        (sd - 1.0 + p) * std::log(1.0 - (1.0 - p) / sd);
    return 0.5 * (entropy + correction);
}

struct EntropyCurveRow {
    double p;
    double fh;
    double gh;
    double h_K;
};

/// Rows p = step, 2*step, ... capped strictly below 1, with the three curves.
/// extra_p, when inside (0,1), is spliced into the grid at its sorted place.
inline std::vector<EntropyCurveRow> entropy_curve(std::size_t r, double grid_step,
                                                  double extra_p = -1.0) {
    if (!(grid_step > 0.0 && grid_step <= 0.1))
        throw std::invalid_argument("entropy_curve: grid step must lie in (0, 0.1]");
    std::vector<double> grid;
    for (std::size_t k = 1; static_cast<double>(k) * grid_step < 1.0 - 1e-12; ++k)
        grid.push_back(static_cast<double>(k) * grid_step);
    if (extra_p > 0.0 && extra_p < 1.0) {
        auto pos = std::lower_bound(grid.begin(), grid.end(), extra_p);
        if (pos == grid.end() || std::abs(*pos - extra_p) > 1e-15) grid.insert(pos, extra_p);
    }
    std::vector<EntropyCurveRow> rows;
    rows.reserve(grid.size());
    for (double p : grid) rows.push_back({p, fh(r, p), gh(r, p), h_K(r, p)});
    return rows;
}

/// CSV with the fixed header "p,fh,gh,hK" and 12 significant digits.
inline void write_entropy_csv(std::ostream& out, const std::vector<EntropyCurveRow>& rows) {
    out << "p,fh,gh,hK\n";
    char buf[128];
    for (const EntropyCurveRow& row : rows) {
        std::snprintf(buf, sizeof(buf), "%.12g,%.12g,%.12g,%.12g\n", row.p, row.fh, row.gh,
                      row.h_K);
        out << buf;
    }
}

}  // namespace matchkit
