#include "sumfree/sumfree.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <string>

using namespace sumfree;

namespace {

// Naive filter over all 2^n subsets.
std::uint64_t count_by_filter(const AbelianGroup& g) {
    const std::uint64_t n = g.order();
    std::uint64_t count = 0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << n); ++mask) {
        Subset f(g);
        for (std::uint64_t rest = mask; rest; rest &= rest - 1)
            f.insert(std::uint64_t(std::countr_zero(rest)));
        if (is_sumfree(f)) ++count;
    }
    return count;
}

}  // namespace

TEST_CASE("sum-free predicate") {
    AbelianGroup z7 = make_group({7});
    CHECK(is_sumfree(Subset(z7)));
    CHECK(is_sumfree(Subset::of_ranks(z7, {2, 3})));
    // Exhaustive pair oracle for the same subset.
    Subset f = Subset::of_ranks(z7, {2, 3});
    bool any = false;
    for (std::uint64_t x : f.ranks())
        for (std::uint64_t y : f.ranks())
            if (f.contains(z7.add(x, y))) any = true;
    CHECK_FALSE(any);
    // Zero in the subset always gives 0 + 0 = 0.
    for (const AbelianGroup& g : enumerate_groups(8)) {
        if (g.trivial()) continue;
        Subset with_zero(g);
        with_zero.insert(g.zero());
        CHECK_FALSE(is_sumfree(with_zero));
    }
}

TEST_CASE("exact counts on the smallest groups") {
    CHECK(count_sumfree(parse_group_spec("1")) == 1);
    CHECK(count_sumfree(make_group({2})) == 2);
    CHECK(count_sumfree(make_group({3})) == 3);
    CHECK(count_sumfree(make_group({4})) == 5);
}

TEST_CASE("backtracking count matches the naive filter") {
    for (const AbelianGroup& g : enumerate_groups(12)) {
        if (g.trivial()) continue;
        CHECK(count_sumfree(g) == count_by_filter(g));
    }
}

TEST_CASE("counting exponent") {
    CHECK(sigma(make_group({2})) == 0.5);
    CHECK(sigma(make_group({3})) == Catch::Approx(std::log2(3.0) / 3.0).epsilon(1e-12));
    CHECK(sigma(parse_group_spec("1")) == 0.0);
}

TEST_CASE("largest sum-free subsets with witnesses") {
    MaxSumfree z10 = max_sumfree(make_group({10}));
    CHECK(z10.size == 5);
    CHECK(z10.witness == std::vector<std::uint64_t>{1, 3, 5, 7, 9});
    CHECK(max_sumfree(make_group({7})).size == 2);
    CHECK(max_sumfree(make_group({9})).size == 3);

    for (const AbelianGroup& g : enumerate_groups(20)) {
        if (g.trivial()) continue;
        MaxSumfree best = max_sumfree(g);
        Subset w = Subset::of_ranks(g, best.witness);
        CHECK(is_sumfree(w));
        CHECK(w.size() == best.size);
        CHECK(best.size == mu_times_order(g));
    }
}

TEST_CASE("census rows") {
    CensusRow z7 = census(make_group({7}));
    CHECK(z7.sumfree_count >= 4);
    CHECK(z7.sigma_value >= 2.0 / 7.0);
    REQUIRE(z7.mu_value.has_value());
    CHECK(*z7.mu_value == Rational(2, 7));

    CensusRow z2 = census(make_group({2}));
    CHECK(z2.sumfree_count == 2);
    CHECK(z2.sigma_value == 0.5);
    CHECK(to_double(*z2.mu_value) == 0.5);

    CensusRow z9 = census(make_group({9}));
    CHECK(z9.sigma_value >= 1.0 / 3.0);

    CensusRow one = census(parse_group_spec("1"));
    CHECK(one.sumfree_count == 1);
    CHECK(one.sigma_value == 0.0);
    CHECK_FALSE(one.mu_value.has_value());
}

TEST_CASE("census invariants across small classes") {
    for (const AbelianGroup& g : enumerate_groups(18)) {
        if (g.trivial()) continue;
        CensusRow row = census(g);
        MaxSumfree best = max_sumfree(g);
        CHECK(row.sigma_value >= to_double(*row.mu_value) - 1e-12);
        // Every subset of a maximum sum-free set is sum-free.
        CHECK(Rational(BigInt(row.sumfree_count)) >= Rational(BigInt(1) << int(best.size)));
    }
}

TEST_CASE("order ceilings refuse oversized groups") {
    CHECK_THROWS_AS(count_sumfree(make_group({49})), limit_error);
    CHECK_THROWS_AS(max_sumfree(make_group({129})), limit_error);

    // The environment knob lowers both ceilings; the search cap never
    // exceeds the 128 mask limit.
    REQUIRE(setenv("SUMFREE_LAB_LIMIT", "10", 1) == 0);
    CHECK_THROWS_AS(count_sumfree(make_group({11})), limit_error);
    CHECK_THROWS_AS(max_sumfree(make_group({11})), limit_error);
    CHECK(count_sumfree(make_group({10})) > 0);
    REQUIRE(setenv("SUMFREE_LAB_LIMIT", "4096", 1) == 0);
    CHECK_THROWS_AS(count_sumfree(make_group({5, 25})), limit_error);
    REQUIRE(unsetenv("SUMFREE_LAB_LIMIT") == 0);
    CHECK_THROWS_AS(count_sumfree(make_group({49})), limit_error);
}
