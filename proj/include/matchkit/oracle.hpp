#pragma once

// Evaluator abstraction for a homogeneous polynomial with nonnegative
// coefficients.  The exact-count formulas only ever see a polynomial through
// point evaluations, so the oracle records how many it pays for.

#include <atomic>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

#include "matchkit/rational.hpp"

namespace matchkit {

class PolynomialOracle {
public:
    using EvalFn = std::function<Rat(const std::vector<Rat>&)>;

    PolynomialOracle(std::size_t variables, std::size_t degree, EvalFn eval)
        : variables_(variables), degree_(degree), eval_(std::move(eval)) {
        if (!eval_) throw std::invalid_argument("PolynomialOracle: null evaluator");
    }

    PolynomialOracle(const PolynomialOracle& o)
        : variables_(o.variables_), degree_(o.degree_), eval_(o.eval_),
          calls_(o.calls_.load()) {}

    std::size_t variable_count() const { return variables_; }
    std::size_t degree() const { return degree_; }

    // The evaluation function must be safe for concurrent invocation.
    Rat operator()(const std::vector<Rat>& x) const {
        if (x.size() != variables_)
            throw std::invalid_argument("PolynomialOracle: wrong point dimension");
        calls_.fetch_add(1, std::memory_order_relaxed);
        return eval_(x);
    }

    long long call_count() const { return calls_.load(std::memory_order_relaxed); }
    void reset_call_count() const { calls_.store(0, std::memory_order_relaxed); }

private:
    std::size_t variables_, degree_;
    EvalFn eval_;
    mutable std::atomic<long long> calls_{0};
};

}  // namespace matchkit
