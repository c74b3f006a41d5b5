#pragma once

// Polynomial capacity Cap p = inf { p(x) : x > 0, x_1...x_n = 1 } through the
// convex reformulation log Cap p = inf { log p(e^y) : sum y_i = 0 }, plus
// Sinkhorn scaling and the capacity sandwich for perm_m.
//
// Everything here is double precision; objectives are evaluated in the log
// domain (max coordinate factored out) so points far along a divergent ray do
// not overflow.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "matchkit/combinatorics.hpp"
#include "matchkit/exact.hpp"
#include "matchkit/matrix.hpp"
#include "matchkit/oracle.hpp"

namespace matchkit {

// Log-domain view of a polynomial with nonnegative coefficients: evaluates
// g(y) = log p(e^y), and its gradient when one is supplied analytically.
struct CapacityOracle {
    std::size_t variables = 0;
    std::size_t degree = 0;
    std::function<double(const std::vector<double>&)> log_value;
    std::function<std::vector<double>(const std::vector<double>&)> gradient;  // optional
};

struct CapacityOptions {
    double tol = 1e-8;            // infinity norm of the projected gradient
    std::size_t max_iter = 100000;
};

struct CapacityResult {
    double log_capacity = 0.0;
    std::vector<double> y;        // minimizer on the sum-zero hyperplane
    bool converged = false;
    bool diverged_to_zero = false;  // Cap p = 0 detected
    std::size_t iterations = 0;

    double capacity() const { return diverged_to_zero ? 0.0 : std::exp(log_capacity); }
};

namespace detail {

inline std::vector<double> central_difference_gradient(
    const std::function<double(const std::vector<double>&)>& f, std::vector<double> y,
    double h = 1e-6) {
    std::vector<double> g(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
        double y0 = y[i];
        y[i] = y0 + h;
        double fp = f(y);
        y[i] = y0 - h;
        double fm = f(y);
        y[i] = y0;
        g[i] = (fp - fm) / (2 * h);
    }
    return g;
}

inline void project_to_sum_zero(std::vector<double>& v) {
    double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
    for (double& x : v) x -= mean;
}

inline double inf_norm(const std::vector<double>& v) {
    double m = 0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

constexpr double neg_inf = -std::numeric_limits<double>::infinity();

inline double logaddexp(double a, double b) {
    if (a == neg_inf) return b;
    if (b == neg_inf) return a;
    double m = std::max(a, b);
    return m + std::log1p(std::exp(-std::abs(a - b)));
}

// log S_t(u) for t = 0..k from the logs w_i = log u_i (w_i = -inf allowed).
// The whole DP lives in the log domain so arbitrarily spread iterates along a
// divergence ray never overflow or underflow.
inline std::vector<double> log_esym(const std::vector<double>& w, std::size_t k) {
    std::vector<double> e(k + 1, neg_inf);
    e[0] = 0.0;
    std::size_t seen = 0;
    for (double wi : w) {
        ++seen;
        std::size_t top = std::min(seen, k);
        for (std::size_t t = top; t >= 1; --t) e[t] = logaddexp(e[t], wi + e[t - 1]);
    }
    return e;
}

// log S_{k-1} of u with coordinate i removed, for every i (prefix/suffix DP).
inline std::vector<double> log_esym_leave_one_out(const std::vector<double>& w, std::size_t k) {
    std::size_t n = w.size();
    std::vector<std::vector<double>> pre(n + 1), suf(n + 1);
    pre[0] = std::vector<double>(k, neg_inf);
    pre[0][0] = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        pre[i + 1] = pre[i];
        for (std::size_t t = k - 1; t >= 1; --t)
            pre[i + 1][t] = logaddexp(pre[i + 1][t], w[i] + pre[i + 1][t - 1]);
    }
    suf[n] = std::vector<double>(k, neg_inf);
    suf[n][0] = 0.0;
    for (std::size_t i = n; i-- > 0;) {
        suf[i] = suf[i + 1];
        for (std::size_t t = k - 1; t >= 1; --t)
            suf[i][t] = logaddexp(suf[i][t], w[i] + suf[i][t - 1]);
    }
    std::vector<double> out(n, neg_inf);
    for (std::size_t i = 0; i < n; ++i) {
        double acc = neg_inf;
        for (std::size_t t = 0; t < k; ++t) acc = logaddexp(acc, pre[i][t] + suf[i + 1][k - 1 - t]);
        out[i] = acc;
    }
    return out;
}

}  // namespace detail

/// Minimizes g(y) = log p(e^y) over the hyperplane sum(y) = 0 by projected
/// gradient descent with Armijo backtracking (c = 1e-4, shrink 0.5, initial
/// step 1).  Declares Cap p = 0 when the objective falls below -1e3 with
/// ||y||_inf > 1e3 (the objective is unbounded below exactly when the
/// capacity vanishes).
inline CapacityResult log_capacity(const CapacityOracle& p, CapacityOptions opt = {}) {
    if (!p.log_value) throw std::invalid_argument("log_capacity: oracle has no evaluator");
    const double divergence_floor = -1e3;
    const double divergence_radius = 1e3;

    auto gradient = [&](const std::vector<double>& y) {
        return p.gradient ? p.gradient(y) : detail::central_difference_gradient(p.log_value, y);
    };

    CapacityResult res;
    std::vector<double> y(p.variables, 0.0);
    double g = p.log_value(y);
    if (!std::isfinite(g)) throw std::runtime_error("log_capacity: non-finite oracle value at start");

    for (std::size_t iter = 0; iter < opt.max_iter; ++iter) {
        res.iterations = iter;
        if (g < divergence_floor && detail::inf_norm(y) > divergence_radius) {
            res.diverged_to_zero = true;
            res.y = y;
            res.log_capacity = -std::numeric_limits<double>::infinity();
            return res;
        }
        std::vector<double> pg = gradient(y);
        detail::project_to_sum_zero(pg);
        double pg_norm = detail::inf_norm(pg);
        if (pg_norm <= opt.tol) {
            res.converged = true;
            break;
        }
        double pg_sq = 0;
        for (double v : pg) pg_sq += v * v;

        double step = 1.0;
        bool accepted = false;
        std::vector<double> trial(y.size());
        for (int bt = 0; bt < 60; ++bt) {
            for (std::size_t i = 0; i < y.size(); ++i) trial[i] = y[i] - step * pg[i];
            detail::project_to_sum_zero(trial);
            double g_trial = p.log_value(trial);
            if (g_trial <= g - 1e-4 * step * pg_sq) {  // -inf accepted: divergence ray
                y = trial;
                g = g_trial;
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) {
            // Line search exhausted: the iterate is as good as double precision
            // allows along this direction.
            break;
        }
        if (!std::isfinite(g)) {
            if (detail::inf_norm(y) > divergence_radius) {
                res.diverged_to_zero = true;
                res.y = y;
                res.log_capacity = -std::numeric_limits<double>::infinity();
                res.iterations = iter + 1;
                return res;
            }
            throw std::runtime_error("log_capacity: non-finite oracle value");
        }
    }
    res.y = y;
    res.log_capacity = g;
    return res;
}

/// Log-domain oracle for p_{k,A}(x) = S_k(A x) with its analytic gradient.
/// Zero rows are rejected: p_{k,A} requires every row of A to be nonzero.
inline CapacityOracle p_kA_capacity_oracle(const RationalMatrix& a, std::size_t k,
                                           bool allow_zero_rows = false) {
    std::size_t nrows = a.rows(), ncols = a.cols();
    if (k < 1 || k > nrows) throw std::invalid_argument("p_kA: k out of range");
    std::size_t nonzero_rows = 0;
    for (std::size_t i = 0; i < nrows; ++i) {
        if (a.row_sum(i) != 0)
            ++nonzero_rows;
        else if (!allow_zero_rows)
            throw std::invalid_argument("p_kA: zero row");
    }
    if (allow_zero_rows && nonzero_rows < k)
        throw std::invalid_argument("p_kA: fewer than k nonzero rows, polynomial is zero");

    std::vector<double> dense = a.to_doubles();

    // w_i = log (A e^y)_i via per-row log-sum-exp; -inf for zero rows.
    auto row_logs = [dense, nrows, ncols](const std::vector<double>& y) {
        std::vector<double> w(nrows, detail::neg_inf);
        for (std::size_t i = 0; i < nrows; ++i) {
            double m = detail::neg_inf;
            for (std::size_t j = 0; j < ncols; ++j)
                if (dense[i * ncols + j] > 0) m = std::max(m, y[j]);
            if (m == detail::neg_inf) continue;
            double acc = 0;
            for (std::size_t j = 0; j < ncols; ++j)
                if (dense[i * ncols + j] > 0) acc += dense[i * ncols + j] * std::exp(y[j] - m);
            w[i] = m + std::log(acc);
        }
        return w;
    };

    CapacityOracle oracle;
    oracle.variables = ncols;
    oracle.degree = k;
    oracle.log_value = [row_logs, k](const std::vector<double>& y) {
        return detail::log_esym(row_logs(y), k)[k];
    };
    oracle.gradient = [row_logs, dense, nrows, ncols, k](const std::vector<double>& y) {
        std::vector<double> w = row_logs(y);
        double log_sk = detail::log_esym(w, k)[k];
        std::vector<double> log_loo = detail::log_esym_leave_one_out(w, k);
        std::vector<double> grad(ncols, 0.0);
        for (std::size_t j = 0; j < ncols; ++j) {
            double acc = 0;
            for (std::size_t i = 0; i < nrows; ++i) {
                double aij = dense[i * ncols + j];
                if (aij > 0 && log_loo[i] != detail::neg_inf)
                    acc += std::exp(log_loo[i] + std::log(aij) + y[j] - log_sk);
            }
            grad[j] = acc;
        }
        return grad;
    };
    return oracle;
}

// Exact evaluator + log-domain optimizer view of the same p_{k,A}.
struct GeneratingOracle {
    PolynomialOracle exact;
    CapacityOracle capacity;
};

/// p_{k,A}(x) = S_k(A x): exact O(n^2)-per-call evaluator plus the analytic
/// gradient of y -> log p(e^y) for the capacity solver.
inline GeneratingOracle p_kA_oracle(const RationalMatrix& a, std::size_t k) {
    std::size_t nrows = a.rows(), ncols = a.cols();
    if (k < 1 || k > nrows) throw std::invalid_argument("p_kA: k out of range");
    PolynomialOracle exact(ncols, k, [a, k](const std::vector<Rat>& x) {
        std::size_t nrows = a.rows(), ncols = a.cols();
        std::vector<Rat> ax(nrows, Rat(0));
        for (std::size_t i = 0; i < nrows; ++i) {
            Rat acc = 0;
            for (std::size_t j = 0; j < ncols; ++j)
                if (a(i, j) != 0 && x[j] != 0) acc += a(i, j) * x[j];
            ax[i] = std::move(acc);
        }
        return elementary_symmetric(ax, k);
    });
    return GeneratingOracle{std::move(exact), p_kA_capacity_oracle(a, k)};
}

// --- Sinkhorn scaling --------------------------------------------------------

struct ScalingResult {
    std::vector<double> d1, d2;     // positive diagonals, gauge Pi d1 = Pi d2
    std::vector<double> scaled;     // A = D1 B D2, row-major
    double residual = 0.0;          // max |row or column sum - 1|
    std::size_t iterations = 0;
    bool converged = false;
};

/// Alternating row/column normalization of a strictly positive square matrix.
/// On max_iter exhaustion the result is returned with its residual and
/// converged = false.
inline ScalingResult sinkhorn_scale(const RationalMatrix& b, double tol = 1e-12,
                                    std::size_t max_iter = 10000) {
    if (!b.square()) throw std::invalid_argument("sinkhorn_scale: matrix not square");
    std::size_t n = b.rows();
    if (n == 0) throw std::invalid_argument("sinkhorn_scale: empty matrix");
    for (const Rat& e : b.entries())
        if (e <= 0) throw std::invalid_argument("sinkhorn_scale: entries must be strictly positive");

    ScalingResult res;
    res.d1.assign(n, 1.0);
    res.d2.assign(n, 1.0);
    std::vector<double> a = b.to_doubles();

    auto residual = [&]() {
        double r = 0;
        for (std::size_t i = 0; i < n; ++i) {
            double rs = 0, cs = 0;
            for (std::size_t j = 0; j < n; ++j) {
                rs += a[i * n + j];
                cs += a[j * n + i];
            }
            r = std::max({r, std::abs(rs - 1.0), std::abs(cs - 1.0)});
        }
        return r;
    };

    res.residual = residual();
    while (res.iterations < max_iter && res.residual > tol) {
        for (std::size_t i = 0; i < n; ++i) {
            double rs = 0;
            for (std::size_t j = 0; j < n; ++j) rs += a[i * n + j];
            for (std::size_t j = 0; j < n; ++j) a[i * n + j] /= rs;
            res.d1[i] /= rs;
        }
        for (std::size_t j = 0; j < n; ++j) {
            double cs = 0;
            for (std::size_t i = 0; i < n; ++i) cs += a[i * n + j];
            for (std::size_t i = 0; i < n; ++i) a[i * n + j] /= cs;
            res.d2[j] /= cs;
        }
        ++res.iterations;
        res.residual = residual();
    }
    res.converged = res.residual <= tol;

    // Fix the t*D1, D2/t gauge freedom: normalize Pi d1 = Pi d2.
    double log_t = 0;
    for (std::size_t i = 0; i < n; ++i) log_t += std::log(res.d2[i]) - std::log(res.d1[i]);
    double t = std::exp(log_t / (2.0 * static_cast<double>(n)));
    for (std::size_t i = 0; i < n; ++i) {
        res.d1[i] *= t;
        res.d2[i] /= t;
    }
    res.scaled = std::move(a);
    return res;
}

/// Cap p_{n,B} = 1 / det(D1 D2) for strictly positive B.
inline double capacity_via_sinkhorn(const RationalMatrix& b, double tol = 1e-12,
                                    std::size_t max_iter = 10000) {
    ScalingResult s = sinkhorn_scale(b, tol, max_iter);
    double log_det = 0;
    for (std::size_t i = 0; i < s.d1.size(); ++i)
        log_det += std::log(s.d1[i]) + std::log(s.d2[i]);
    return std::exp(-log_det);
}

// --- capacity sandwich for perm_m --------------------------------------------

struct PermBounds {
    double lower = 0.0;
    double upper = 0.0;
    CapacityResult capacity;  // solve for p = S_m(Ax) ((sum x)/n)^{n-m}
};

/// Two-sided capacity bounds on perm_m A:
///   (n!/n^n) Cap p <= (n-m)!/n^{n-m} perm_m A <= Cap p,
/// for the degree-n polynomial p(x) = S_m(Ax) ((sum x_i)/n)^{n-m}.  When the
/// capacity vanishes both bounds are zero (and then perm_m A = 0 exactly).
inline PermBounds approx_perm_m(const RationalMatrix& a, std::size_t m,
                                CapacityOptions opt = {}) {
    if (!a.square()) throw std::invalid_argument("approx_perm_m: matrix not square");
    std::size_t n = a.rows();
    if (m < 1 || m > n) throw std::invalid_argument("approx_perm_m: m out of range");

    std::size_t nonzero_rows = 0;
    for (std::size_t i = 0; i < n; ++i)
        if (a.row_sum(i) != 0) ++nonzero_rows;
    if (nonzero_rows < m) return PermBounds{};  // S_m(Ax) == 0, so perm_m == 0

    CapacityOracle q = p_kA_capacity_oracle(a, m, /*allow_zero_rows=*/true);
    double ext = static_cast<double>(n - m);
    double log_n = std::log(static_cast<double>(n));

    CapacityOracle p;
    p.variables = n;
    p.degree = n;
    p.log_value = [q, ext, log_n](const std::vector<double>& y) {
        double base = q.log_value(y);
        if (ext == 0) return base;
        double ymax = *std::max_element(y.begin(), y.end());
        double se = 0;
        for (double v : y) se += std::exp(v - ymax);
        return base + ext * (ymax + std::log(se) - log_n);
    };
    p.gradient = [q, ext](const std::vector<double>& y) {
        std::vector<double> g = q.gradient(y);
        if (ext == 0) return g;
        double ymax = *std::max_element(y.begin(), y.end());
        double se = 0;
        for (double v : y) se += std::exp(v - ymax);
        for (std::size_t j = 0; j < y.size(); ++j) g[j] += ext * std::exp(y[j] - ymax) / se;
        return g;
    };

    PermBounds out;
    out.capacity = log_capacity(p, opt);
    if (out.capacity.diverged_to_zero) return out;

    double log_factor = ext * log_n - std::lgamma(ext + 1.0);  // n^{n-m}/(n-m)!
    double nd = static_cast<double>(n);
    out.upper = std::exp(out.capacity.log_capacity + log_factor);
    out.lower = std::exp(out.capacity.log_capacity + log_factor + std::lgamma(nd + 1.0) -
                         nd * log_n);
    return out;
}

/// Is perm_m A > 0?  Exact evaluation at desk scale, capacity route beyond it.
inline bool positivity_check(const RationalMatrix& a, std::size_t m) {
    if (!a.square()) throw std::invalid_argument("positivity_check: matrix not square");
    std::size_t n = a.rows();
    if (m < 1 || m > n) throw std::invalid_argument("positivity_check: m out of range");
    if (n <= 16) return perm_m(a, m) > 0;
    PermBounds b = approx_perm_m(a, m);
    return !b.capacity.diverged_to_zero && b.lower > 0;
}

}  // namespace matchkit
