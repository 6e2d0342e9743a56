#include "sumfree/sumfree.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdint>
#include <numbers>

using namespace sumfree;

TEST_CASE("known optimum at zero mass") {
    ExtremalCosineProblem prob;  // q = 7, l = 0, cap = 1, mass = 0
    ExtremalSolution sol = minimize_weighted_cosine(prob);
    // Negative coefficients sit at j in {2,3,4,5}; the optimum saturates
    // exactly those.
    double expect = 2.0 * (std::cos(6.0 * std::numbers::pi / 7.0) +
                           std::cos(4.0 * std::numbers::pi / 7.0));
    CHECK(sol.value == Catch::Approx(expect).margin(1e-12));
    for (std::uint64_t j = 0; j < 7; ++j) {
        if (j >= 2 && j <= 5) CHECK(sol.weights[j] == Rational(1));
        else CHECK(sol.weights[j] == Rational(0));
    }
}

TEST_CASE("full mass forces every weight") {
    ExtremalCosineProblem prob;
    prob.mass = Rational(7);
    ExtremalSolution sol = minimize_weighted_cosine(prob);
    for (std::uint64_t j = 0; j < 7; ++j) CHECK(sol.weights[j] == Rational(1));
    // Sum of all 7th roots of unity vanishes.
    CHECK(std::abs(sol.value) < 1e-9);
}

TEST_CASE("infeasible problems are rejected") {
    ExtremalCosineProblem prob;
    prob.cap = Rational(1, 2);
    prob.mass = Rational(4);  // cap * q = 7/2 < 4
    CHECK_THROWS_AS(minimize_weighted_cosine(prob), std::invalid_argument);
    CHECK_THROWS_AS(minimize_weighted_cosine_bruteforce(prob), std::invalid_argument);

    ExtremalCosineProblem bad_l;
    bad_l.l = 4;  // beyond (q - 1) / 2
    CHECK_THROWS_AS(minimize_weighted_cosine(bad_l), std::invalid_argument);

    ExtremalCosineProblem big;
    big.q = 23;
    CHECK_THROWS_AS(minimize_weighted_cosine_bruteforce(big), limit_error);
}

TEST_CASE("greedy agrees with brute force on a shifted instance") {
    ExtremalCosineProblem prob;
    prob.l = 1;
    prob.cap = Rational(1, 2);
    prob.mass = Rational(2);
    double greedy = minimize_weighted_cosine(prob).value;
    double oracle = minimize_weighted_cosine_bruteforce(prob);
    CHECK(std::abs(greedy - oracle) < 1e-9);
}

TEST_CASE("solutions are feasible and optimal across a grid") {
    for (std::uint64_t q : {7ull, 13ull}) {
        for (std::uint64_t l = 0; l <= (q - 1) / 2; ++l) {
            for (Rational cap : {Rational(1, 2), Rational(1)}) {
                for (Rational mass : {Rational(0), Rational(1), Rational(3, 2)}) {
                    ExtremalCosineProblem prob{q, l, cap, mass};
                    ExtremalSolution sol = minimize_weighted_cosine(prob);
                    Rational total = 0;
                    for (const Rational& w : sol.weights) {
                        CHECK(w >= 0);
                        CHECK(w <= cap);
                        total += w;
                    }
                    CHECK(total >= mass);
                    double oracle = minimize_weighted_cosine_bruteforce(prob);
                    CHECK(std::abs(sol.value - oracle) < 1e-9);
                }
            }
        }
    }
}
