#pragma once

#include "sumfree/numeric.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace sumfree {

/// Minimize sum_j gamma_j cos((2j + l) pi / q) over 0 <= gamma_j <= cap with
/// sum_j gamma_j >= mass. l is restricted to [0, (q-1)/2]; larger phase
/// offsets must be reduced by the caller (the objective is not periodic in l).
struct ExtremalCosineProblem {
    std::uint64_t q = 7;
    std::uint64_t l = 0;
    Rational cap = 1;
    Rational mass = 0;
};

struct ExtremalSolution {
    double value = 0;
    std::vector<Rational> weights;
};

namespace detail {

inline void validate_extremal(const ExtremalCosineProblem& prob) {
    if (prob.q == 0) throw std::invalid_argument("extremal problem needs q >= 1");
    if (prob.l > (prob.q - 1) / 2)
        throw std::invalid_argument("extremal problem needs 0 <= l <= (q - 1) / 2");
    if (prob.cap < 0 || prob.mass < 0)
        throw std::invalid_argument("extremal problem needs cap >= 0 and mass >= 0");
    if (prob.cap * prob.q < prob.mass)
        throw std::invalid_argument("infeasible extremal problem: cap * q < mass");
}

inline std::vector<double> cosine_coefficients(const ExtremalCosineProblem& prob) {
    std::vector<double> c(prob.q);
    for (std::uint64_t j = 0; j < prob.q; ++j)
        c[j] = std::cos(double(2 * j + prob.l) * std::numbers::pi / double(prob.q));
    return c;
}

}  // namespace detail

/// Exact greedy: saturate every strictly negative coefficient (most negative
/// first); if the mass constraint still binds, pour the remainder onto the
/// smallest nonnegative coefficients. Optimal because the objective is
/// separable and each unit of forced mass costs its coefficient.
inline ExtremalSolution minimize_weighted_cosine(const ExtremalCosineProblem& prob) {
    detail::validate_extremal(prob);
    auto c = detail::cosine_coefficients(prob);
    std::vector<std::uint64_t> order(prob.q);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::uint64_t a, std::uint64_t b) {
        if (c[a] != c[b]) return c[a] < c[b];
        return a < b;
    });

    ExtremalSolution sol;
    sol.weights.assign(prob.q, Rational(0));
    Rational placed = 0;
    for (std::uint64_t j : order) {
        if (c[j] < 0) {
            sol.weights[j] = prob.cap;
            placed += prob.cap;
        }
    }
    if (placed < prob.mass) {
        Rational remaining = prob.mass - placed;
        for (std::uint64_t j : order) {
            if (c[j] < 0) continue;
            Rational take = std::min(prob.cap, remaining);
            sol.weights[j] = take;
            remaining -= take;
            if (remaining == 0) break;
        }
    }
    double value = 0;
    for (std::uint64_t j = 0; j < prob.q; ++j)
        if (sol.weights[j] != 0) value += to_double(sol.weights[j]) * c[j];
    sol.value = value;
    return sol;
}

/// Independent oracle by vertex enumeration: at an optimum of this box-plus-
/// one-row program, every weight sits at 0 or cap except at most one, which
/// makes the mass constraint tight. Enumerates all 2^q saturation patterns
/// (subset cosine sums built by bit-DP) plus every choice of fractional
/// coordinate. Exponential; guarded to q <= 20.
inline double minimize_weighted_cosine_bruteforce(const ExtremalCosineProblem& prob) {
    detail::validate_extremal(prob);
    if (prob.q > 20) throw limit_error("minimize_weighted_cosine_bruteforce: q above 20");
    auto c = detail::cosine_coefficients(prob);
    const std::uint64_t q = prob.q;
    const double cap = to_double(prob.cap);
    const double mass = to_double(prob.mass);

    std::vector<double> subset_sum(std::size_t(1) << q, 0.0);
    for (std::uint64_t s = 1; s < subset_sum.size(); ++s) {
        std::uint64_t low = std::uint64_t(std::countr_zero(s));
        subset_sum[s] = subset_sum[s & (s - 1)] + c[low];
    }

    double best = std::numeric_limits<double>::infinity();
    for (std::uint64_t s = 0; s < subset_sum.size(); ++s) {
        const int saturated = std::popcount(s);
        const double total = cap * double(saturated);
        const double base = cap * subset_sum[s];
        if (total >= mass) best = std::min(best, base);
        const double frac = mass - total;
        if (frac <= 0 || frac >= cap) continue;
        for (std::uint64_t j = 0; j < q; ++j)
            if (!((s >> j) & 1)) best = std::min(best, base + frac * c[j]);
    }
    return best;
}

}  // namespace sumfree
