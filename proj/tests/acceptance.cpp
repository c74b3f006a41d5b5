// Acceptance suite: every release gate in one binary, one PASS/FAIL line per
// criterion, nonzero exit if anything fails.  Stated runtime caps are part of
// the gate and enforced here.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "matchkit/matchkit.hpp"

using namespace matchkit;

namespace {

int failures = 0;

void criterion(int id, const std::string& label, double time_cap_seconds,
               const std::function<bool()>& body) {
    auto start = std::chrono::steady_clock::now();
    bool ok = false;
    std::string note;
    try {
        ok = body();
    } catch (const std::exception& e) {
        ok = false;
        note = std::string(" [exception: ") + e.what() + "]";
    }
    double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (time_cap_seconds > 0 && elapsed > time_cap_seconds) {
        ok = false;
        note += " [over time cap]";
    }
    std::printf("%s  %2d. %s (%.2fs)%s\n", ok ? "PASS" : "FAIL", id, label.c_str(), elapsed,
                note.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

RationalMatrix random_integer_matrix(std::size_t n, std::mt19937_64& rng, int max_entry) {
    std::uniform_int_distribution<int> entry(0, max_entry);
    RationalMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a.set(i, j, entry(rng));
    return a;
}

double maximize_fh(std::size_t r) {
    double lo = 1e-9, hi = 1.0 - 1e-9;
    for (int it = 0; it < 300; ++it) {
        double a = lo + (hi - lo) / 3, b = hi - (hi - lo) / 3;
        if (fh(r, a) < fh(r, b))
            lo = a;
        else
            hi = b;
    }
    return fh(r, 0.5 * (lo + hi));
}

bool perm_oracle_equivalence() {
    std::mt19937_64 rng(90001);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t n = 1 + trial % 7;  // covers every n <= 7
        RationalMatrix a = random_integer_matrix(n, rng, 9);
        for (std::size_t m = 1; m <= n; ++m)
            if (perm_m(a, m) != brute_force_perm_m(a, m)) return false;
    }
    return true;
}

bool haf_oracle_equivalence() {
    std::mt19937_64 rng(90002);
    std::bernoulli_distribution edge(0.5);
    for (int trial = 0; trial < 100; ++trial) {
        std::size_t n = 2 + trial % 9;  // covers every N <= 10
        SymmetricMatrix b(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j)
                if (edge(rng)) b.set(i, j, 1);
        for (std::size_t m = 1; m <= 4 && 2 * m <= n; ++m)
            if (haf_m(b, m) != brute_force_haf_m(b, m)) return false;
    }
    return true;
}

bool bipartite_consistency() {
    std::mt19937_64 rng(90003);
    for (int trial = 0; trial < 50; ++trial) {
        std::size_t n = 1 + trial % 5;
        RationalMatrix a = random_integer_matrix(n, rng, 9);
        SymmetricMatrix b = bipartite_to_symmetric(a);
        for (std::size_t m = 1; m <= n; ++m)
            if (haf_m(b, m) != perm_m(a, m)) return false;
    }
    return true;
}

bool krr_closed_form() {
    for (std::size_t r = 1; r <= 5; ++r) {
        MatchingPolynomial phi = matching_sequence(RationalMatrix::ones(r, r));
        if (phi.coeffs.size() != r + 1) return false;
        for (std::size_t k = 0; k <= r; ++k) {
            Int c = binomial(static_cast<long long>(r), static_cast<long long>(k));
            if (phi.coeffs[k] != Rat(c * c * factorial(k))) return false;
        }
    }
    return true;
}

bool ft_inequality_and_equality() {
    std::mt19937_64 rng(90005);
    Rat slack(1, Int("1000000000000"));  // 1e-12
    for (int trial = 0; trial < 100; ++trial) {
        std::size_t n = 2 + trial % 5;  // 2..6
        RationalMatrix b = sample_random_doubly_stochastic(n, rng);
        for (std::size_t m = 1; m <= n; ++m)
            if (perm_m(b, m) < ft_lower_bound(n, m) - slack) return false;
    }
    for (std::size_t n = 1; n <= 6; ++n) {
        RationalMatrix jn = RationalMatrix::flat(n);
        for (std::size_t m = 1; m <= n; ++m)
            if (perm_m(jn, m) != ft_lower_bound(n, m)) return false;
    }
    return true;
}

bool capacity_values() {
    std::mt19937_64 rng(90006);
    for (int trial = 0; trial < 20; ++trial) {
        std::size_t n = 2 + trial % 7;  // 2..8
        RationalMatrix a = sample_random_doubly_stochastic(n, rng);
        for (std::size_t k = 1; k <= n; ++k) {
            CapacityResult res = log_capacity(p_kA_capacity_oracle(a, k));
            if (!res.converged) return false;
            double target = std::log(to_double(Rat(
                binomial(static_cast<long long>(n), static_cast<long long>(k)))));
            if (std::abs(res.log_capacity - target) > 1e-6) return false;
        }
    }
    return std::abs(capacity_via_sinkhorn(RationalMatrix::ones(3, 3)) - 27.0) <= 1e-6;
}

bool capacity_sandwich() {
    std::mt19937_64 rng(90007);
    for (int trial = 0; trial < 50; ++trial) {
        std::size_t n = 1 + trial % 6;
        RationalMatrix a = random_integer_matrix(n, rng, 9);
        if (trial % 4 == 0) {  // sprinkle extra zeros to hit degenerate patterns
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    if (rng() % 3 == 0) a.set(i, j, 0);
        }
        std::size_t m = 1 + rng() % n;
        PermBounds b = approx_perm_m(a, m);
        double exact = to_double(perm_m(a, m));
        if (exact == 0.0) {
            if (b.lower != 0.0 || b.upper != 0.0) return false;
        } else {
            if (exact < b.lower * (1 - 1e-4)) return false;
            if (exact > b.upper * (1 + 1e-4)) return false;
        }
    }
    return true;
}

bool paper_numbers() {
    if (std::abs(gh(6, 2.0 / 3.0) - 0.7845241927) > 1e-9) return false;
    if (std::abs(maximize_fh(6) - 0.7652789557) > 1e-7) return false;
    double lhs = slack_entropy_bound(6, 3, 2.0 / 3.0) + std::log(6.0) / 3.0;
    return std::abs(lhs - gh(6, 2.0 / 3.0)) <= 1e-10;
}

bool expectation_formula() {
    for (std::size_t n = 1; n <= 8; ++n)
        for (std::size_t r = 1; n * r <= 8; ++r)
            for (std::size_t m = 0; m <= n; ++m)
                if (exact_expectation_small(n, r, m) != expected_perm_m(n, r, m)) return false;
    MonteCarloEstimate est = monte_carlo_expectation(4, 3, 2, 10000, 90009);
    double formula = to_double(expected_perm_m(4, 3, 2));
    return std::abs(est.mean - formula) <= 3 * est.stderr_of_mean;
}

bool hyperbolicity_equivalence() {
    const std::size_t n = 6, pairs = 15;
    for (std::size_t mask = 0; mask < (1ull << pairs); ++mask) {
        SimpleGraph g(n);
        std::size_t bit = 0;
        for (std::size_t u = 0; u < n; ++u)
            for (std::size_t v = u + 1; v < n; ++v, ++bit)
                if (mask & (1ull << bit)) g.add_edge(u, v);
        if (!hyperbolicity_cross_check(g)) return false;
    }
    return true;
}

bool heilmann_lieb() {
    std::mt19937_64 rng(90011);
    std::uniform_int_distribution<int> num(0, 9), den(1, 4);
    for (int trial = 0; trial < 100; ++trial) {
        std::size_t n = 1 + trial % 6;
        RationalMatrix b(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) b.set(i, j, Rat(num(rng), den(rng)));
        if (!check_real_rooted(signed_matching_polynomial(b))) return false;
    }
    return true;
}

bool curve_ordering() {
    for (std::size_t r = 2; r <= 6; ++r)
        for (int i = 1; i <= 99; ++i) {
            double p = 0.01 * i;
            if (fh(r, p) > gh(r, p) + 1e-9) return false;
            if (gh(r, p) > h_K(r, p) + 1e-9) return false;
        }
    return true;
}

}  // namespace

int main() {
    criterion(1, "perm_m matches brute force on 200 random matrices (n <= 7)", 30,
              perm_oracle_equivalence);
    criterion(2, "haf_m matches brute force on 100 random 0/1 matrices (N <= 10)", 60,
              haf_oracle_equivalence);
    criterion(3, "haf of the bipartite embedding equals perm_m (50 matrices)", 0,
              bipartite_consistency);
    criterion(4, "K_{r,r} matching sequence equals C(r,k)^2 k! (r <= 5)", 0, krr_closed_form);
    criterion(5, "FT inequality on 100 Sinkhorn matrices; equality at J_n", 0,
              ft_inequality_and_equality);
    criterion(6, "Cap p_{k,A} = C(n,k) for doubly stochastic A; Sinkhorn 27", 0,
              capacity_values);
    criterion(7, "capacity sandwich contains exact perm_m (50 matrices)", 0, capacity_sandwich);
    criterion(8, "reference curve values gh, max fh, slack-bound identity", 0, paper_numbers);
    criterion(9, "configuration-model expectation formula (rn <= 8, Monte Carlo)", 0,
              expectation_formula);
    criterion(10, "spectral vs combinatorial hyperbolicity on all 6-vertex graphs", 120,
              hyperbolicity_equivalence);
    criterion(11, "signed matching polynomials are real-rooted (100 weighted)", 0,
              heilmann_lieb);
    criterion(12, "curve ordering fh <= gh <= h_K on the density grid", 0, curve_ordering);

    if (failures) std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
