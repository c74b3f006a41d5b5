#pragma once

// Binomials, subset enumeration, and elementary symmetric functions.

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "matchkit/rational.hpp"

namespace matchkit {

/// Exact C(n,k); zero when k is out of range.
inline Int binomial(long long n, long long k) {
    if (n < 0) throw std::invalid_argument("binomial: n must be nonnegative");
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    Int c = 1;
    for (long long i = 1; i <= k; ++i) {
        c *= (n - k + i);
        c /= i;  // exact: prefix products of consecutive integers
    }
    return c;
}

// Enumerates the k-subsets of {0,...,n-1} in colexicographic order (sorted by
// largest element, then recursively).  The order is fixed so that partitioned
// enumeration is reproducible.
class SubsetIterator {
public:
    SubsetIterator(std::size_t n, std::size_t k) : n_(n), k_(k), done_(k > n) {
        subset_.resize(done_ ? 0 : k_);
        for (std::size_t i = 0; i < subset_.size(); ++i) subset_[i] = i;
    }

    bool done() const { return done_; }
    const std::vector<std::size_t>& operator*() const { return subset_; }

    void advance() {
        if (done_) return;
        if (k_ == 0) {
            done_ = true;
            return;
        }
        // Colex successor: bump the first index that has room before the next
        // one, reset everything below it to 0,1,...
        for (std::size_t i = 0; i < k_; ++i) {
            std::size_t limit = (i + 1 < k_) ? subset_[i + 1] : n_;
            if (subset_[i] + 1 < limit) {
                ++subset_[i];
                for (std::size_t j = 0; j < i; ++j) subset_[j] = j;
                return;
            }
        }
        done_ = true;
    }

private:
    std::size_t n_, k_;
    bool done_;
    std::vector<std::size_t> subset_;
};

/// S_m(values): sum over all m-element index subsets of the entry products.
/// Prefix DP, O(n*m) arithmetic.  S_0 = 1 and S_m = 0 for m > n.
template <class T>
T elementary_symmetric(std::span<const T> values, std::size_t m) {
    if (m == 0) return T(1);
    if (m > values.size()) return T(0);
    std::vector<T> e(m + 1, T(0));
    e[0] = T(1);
    std::size_t seen = 0;
    for (const T& v : values) {
        ++seen;
        std::size_t top = seen < m ? seen : m;
        for (std::size_t k = top; k >= 1; --k) e[k] += v * e[k - 1];
    }
    return e[m];
}

template <class T>
T elementary_symmetric(const std::vector<T>& values, std::size_t m) {
    return elementary_symmetric(std::span<const T>(values), m);
}

}  // namespace matchkit
