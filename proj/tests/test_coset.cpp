#include "sumfree/sumfree.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdint>
#include <numbers>
#include <set>
#include <vector>

using namespace sumfree;

namespace {

Rational density_of(const Subset& f) { return schur_count_bruteforce(f).density; }

}  // namespace

TEST_CASE("coset profile of a small explicit case") {
    AbelianGroup z6 = make_group({6});
    Subset f = Subset::of_ranks(z6, {1, 2, 4});
    CosetProfile p = coset_profile(f, Character(z6, 2));
    REQUIRE(p.q == 3);
    CHECK(p.coset_size == 2);
    CHECK(p.part_counts == std::vector<std::uint64_t>{0, 2, 1});
    CHECK(p.alphas == std::vector<Rational>{Rational(0), Rational(1), Rational(1, 2)});
}

TEST_CASE("coset profile edge subsets and invariants") {
    AbelianGroup g = make_group({2, 6});
    Character c(g, g.rank_of({1, 2}));  // order 6
    CosetProfile empty = coset_profile(Subset(g), c);
    CosetProfile full = coset_profile(Subset::full(g), c);
    for (std::uint64_t j = 0; j < empty.q; ++j) {
        CHECK(empty.alphas[j] == 0);
        CHECK(full.alphas[j] == 1);
    }

    std::uint64_t id = 0;
    for (const AbelianGroup& gg : {make_group({12}), make_group({3, 9}), make_group({20})}) {
        for (std::uint64_t cr = 1; cr < gg.order(); ++cr) {
            Character cc(gg, cr);
            SplitMix64 rng = derive_stream(55, ++id);
            Subset f = sample_subset(gg, rng, 0.4);
            CosetProfile p = coset_profile(f, cc);
            CHECK(gg.order() % p.q == 0);
            CHECK(p.q == cc.order());
            std::uint64_t total = 0;
            for (std::uint64_t j = 0; j < p.q; ++j) {
                total += p.part_counts[j];
                CHECK(p.alphas[j] >= 0);
                CHECK(p.alphas[j] <= 1);
                CHECK(p.alphas[j] == Rational(p.part_counts[j], p.coset_size));
            }
            CHECK(total == f.size());
        }
    }
    CHECK_THROWS_AS(coset_profile(Subset(g), Character(g, 0)), std::invalid_argument);
}

TEST_CASE("coset membership follows exact phase arithmetic") {
    for (const AbelianGroup& g : {make_group({12}), make_group({2, 6}), make_group({3, 3})}) {
        const std::uint64_t m = g.exponent();
        for (std::uint64_t cr = 1; cr < g.order(); ++cr) {
            Character c(g, cr);
            const std::uint64_t q = c.order();
            for (std::uint64_t x = 0; x < g.order(); ++x) {
                std::uint64_t j = coset_index(c, x);
                // x lands in H_j exactly when u(x)/m = j/q.
                CHECK(c.phase_numerator(x) * q == j * m);
                // Homomorphism of the partition.
                for (std::uint64_t y = 0; y < g.order(); ++y)
                    CHECK(coset_index(c, g.add(x, y)) == (j + coset_index(c, y)) % q);
            }
        }
    }
}

TEST_CASE("middle interval pairs cover the interval") {
    for (std::uint64_t q : {7ull, 13ull, 19ull, 31ull, 37ull, 43ull}) {
        const std::uint64_t k = (q - 1) / 6;
        auto pairs = middle_interval_pairs(q);
        REQUIRE(pairs.size() == 2 * k);
        std::set<std::uint64_t> covered;
        for (auto [i, j] : pairs) {
            CHECK(j == (2 * i) % q);
            covered.insert(i);
            covered.insert(j);
        }
        CHECK(covered.size() == 4 * k);
        for (std::uint64_t v : covered) {
            CHECK(v >= k + 1);
            CHECK(v <= 5 * k);
        }
    }
}

TEST_CASE("pair count bound from triples") {
    AbelianGroup z12 = make_group({12});
    Subset full = Subset::full(z12);
    CosetProfile p = coset_profile(full, Character(z12, 1));
    for (std::uint64_t l = 0; l < p.q; ++l)
        for (std::uint64_t j = 0; j < p.q; ++j) {
            BoundReport r = check_triple_lower_bound(full, p, l, j);
            CHECK(r.outcome == Outcome::Holds);
            CHECK(r.lhs.approx == r.rhs.approx);  // full cosets meet with equality
        }

    CosetProfile pe = coset_profile(Subset(z12), Character(z12, 1));
    BoundReport re = check_triple_lower_bound(Subset(z12), pe, 1, 2);
    CHECK(re.outcome == Outcome::Holds);
    CHECK(re.lhs.approx == 0.0);

    // Oracle on a structured case: rhs really counts pairs into F.
    AbelianGroup z13 = make_group({13});
    Subset mid = Subset::of_ranks(z13, {4, 5, 6, 7, 8, 9});
    CosetProfile pm = coset_profile(mid, Character(z13, 1));
    for (std::uint64_t l : {0ull, 1ull, 5ull})
        for (std::uint64_t j : {0ull, 4ull, 9ull}) {
            BoundReport r = check_triple_lower_bound(mid, pm, l, j);
            // Ordered triples x in F_l, y in F_j, z = x + y; z then lies in
            // the (j + l)-th coset automatically.
            std::uint64_t direct = 0;
            for (std::uint64_t x : pm.members[l])
                for (std::uint64_t y : pm.members[j])
                    if (mid.contains(z13.add(x, y))) ++direct;
            REQUIRE(r.rhs.exact.has_value());
            CHECK(*r.rhs.exact == Rational(direct));
            CHECK(r.outcome == Outcome::Holds);
        }
}

TEST_CASE("paired density bound") {
    AbelianGroup z19 = make_group({19});
    CosetProfile pe = coset_profile(Subset(z19), Character(z19, 1));
    CHECK(check_coset_pair_bound(Subset(z19), pe, Rational(0)).empty());

    Subset full = Subset::full(z19);
    CosetProfile pf = coset_profile(full, Character(z19, 1));
    auto reports = check_coset_pair_bound(full, pf, Rational(1));
    CHECK(reports.size() == 19 * 19);
    for (const BoundReport& r : reports) {
        CHECK(r.outcome == Outcome::Holds);
        CHECK(*r.lhs.exact == Rational(2));
        CHECK(*r.rhs.exact == Rational(1) + Rational(19 * 19));
    }

    std::uint64_t id = 0;
    for (std::uint64_t s = 0; s < 8; ++s) {
        SplitMix64 rng = derive_stream(21, ++id);
        Subset f = sample_subset(z19, rng, sample_probability(z19, s));
        CosetProfile p = coset_profile(f, Character(z19, 1));
        for (const BoundReport& r : check_coset_pair_bound(f, p, density_of(f)))
            CHECK(r.outcome == Outcome::Holds);
    }
}

TEST_CASE("heavy index mass bound") {
    AbelianGroup z13 = make_group({13});
    CosetProfile pe = coset_profile(Subset(z13), Character(z13, 1));
    BoundReport re = check_heavy_index_mass(Subset(z13), pe, Rational(1, 2), Rational(0));
    CHECK(re.outcome == Outcome::Holds);
    CHECK(re.lhs.approx == 0.0);

    Subset full = Subset::full(z13);
    CosetProfile pf = coset_profile(full, Character(z13, 1));
    BoundReport rf = check_heavy_index_mass(full, pf, Rational(1, 2), Rational(1));
    CHECK(rf.outcome == Outcome::Holds);
    CHECK(*rf.lhs.exact == Rational(13));
    CHECK(*rf.rhs.exact == Rational(2 * 13 * 13));

    CHECK_THROWS_AS(check_heavy_index_mass(full, pf, Rational(0), Rational(1)),
                    std::invalid_argument);
    CHECK_THROWS_AS(check_heavy_index_mass(full, pf, Rational(-1), Rational(1)),
                    std::invalid_argument);

    std::uint64_t id = 50;
    for (std::uint64_t s = 0; s < 8; ++s) {
        SplitMix64 rng = derive_stream(22, ++id);
        Subset f = sample_subset(z13, rng, 0.5);
        Rational delta = density_of(f);
        if (delta == 0) continue;
        Rational t(llround(std::sqrt(to_double(delta) * 13.0) * (1 << 20)), 1 << 20);
        CosetProfile p = coset_profile(f, Character(z13, 1));
        CHECK(check_heavy_index_mass(f, p, t, delta).outcome == Outcome::Holds);
    }
}

TEST_CASE("middle interval sum bound") {
    AbelianGroup z7 = make_group({7});
    CosetProfile pe = coset_profile(Subset(z7), Character(z7, 1));
    BoundReport re = check_middle_sum(Subset(z7), pe, Rational(0));
    CHECK(re.outcome == Outcome::Holds);
    CHECK(re.lhs.approx == 0.0);
    CHECK(re.rhs.approx == 2.0);

    // Equality case: F = {2, 3}, delta = 0, both sides exactly 2.
    Subset f = Subset::of_ranks(z7, {2, 3});
    CosetProfile p = coset_profile(f, Character(z7, 1));
    BoundReport r = check_middle_sum(f, p, Rational(0));
    CHECK(r.outcome == Outcome::Holds);
    CHECK(r.lhs.approx == 2.0);
    CHECK(r.rhs.approx == 2.0);

    // q = 5 is not 1 mod 6: rejected.
    AbelianGroup z5 = make_group({5});
    CosetProfile p5 = coset_profile(Subset(z5), Character(z5, 1));
    CHECK_THROWS_AS(check_middle_sum(Subset(z5), p5, Rational(0)), std::invalid_argument);

    AbelianGroup z13 = make_group({13});
    std::uint64_t id = 90;
    for (std::uint64_t s = 0; s < 8; ++s) {
        SplitMix64 rng = derive_stream(23, ++id);
        Subset rf = sample_subset(z13, rng, sample_probability(z13, s));
        CosetProfile rp = coset_profile(rf, Character(z13, 1));
        CHECK(check_middle_sum(rf, rp, density_of(rf)).outcome == Outcome::Holds);
    }
}

TEST_CASE("flattest direction bound") {
    AbelianGroup z2 = make_group({2});
    Subset f2 = Subset::of_ranks(z2, {1});
    BoundReport r2 = check_special_direction_bound(f2);
    CHECK(r2.outcome == Outcome::Holds);
    CHECK(r2.lhs.approx == -1.0);
    CHECK(r2.rhs.approx == -1.0);

    AbelianGroup z7 = make_group({7});
    Subset f7 = Subset::of_ranks(z7, {2, 3});
    BoundReport r7 = check_special_direction_bound(f7);
    CHECK(r7.outcome == Outcome::Holds);
    CHECK(r7.rhs.approx < 0.0);

    CHECK_THROWS_AS(check_special_direction_bound(Subset(z7)), std::invalid_argument);
    CHECK_THROWS_AS(check_special_direction_bound(Subset::full(z7)), std::invalid_argument);

    std::uint64_t id = 400;
    std::uint64_t held = 0;
    for (const AbelianGroup& g : {make_group({24}), make_group({5, 10}), make_group({60})}) {
        for (std::uint64_t s = 0; s < 67; ++s) {
            SplitMix64 rng = derive_stream(24, ++id);
            Subset f = sample_subset(g, rng, sample_probability(g, s));
            if (f.empty() || f.size() == g.order()) continue;
            BoundReport r = check_special_direction_bound(f);
            CHECK(r.outcome == Outcome::Holds);
            ++held;
        }
    }
    CHECK(held >= 190);
}

TEST_CASE("cosine sum observation") {
    // Z7 with a maximum sum-free set meets every precondition at delta = 0.
    AbelianGroup z7 = make_group({7});
    Subset f = Subset::of_ranks(z7, {2, 3});
    BoundReport r = check_cosine_sum(f);
    CHECK(r.applicable());
    CHECK(r.lhs.approx < 0.0);
    CHECK(r.outcome == Outcome::Holds);

    // Too small a subset: precondition |F| >= mu * n fails.
    BoundReport small = check_cosine_sum(Subset::of_ranks(z7, {1}));
    CHECK(small.outcome == Outcome::NotApplicable);

    // Type I group: never applicable.
    AbelianGroup z10 = make_group({10});
    BoundReport wrong_type = check_cosine_sum(Subset::of_ranks(z10, {1, 3, 5, 7, 9}));
    CHECK(wrong_type.outcome == Outcome::NotApplicable);

    // Z13: the largest sum-free set again has delta = 0.
    AbelianGroup z13 = make_group({13});
    MaxSumfree best = max_sumfree(z13);
    BoundReport r13 = check_cosine_sum(Subset::of_ranks(z13, best.witness));
    CHECK(r13.applicable());
}

TEST_CASE("density bounds") {
    // Maximum sum-free set: delta = 0 and alpha = mu, so the global bound
    // is met with equality whenever mu >= 1/3.
    AbelianGroup z10 = make_group({10});
    Subset odds = Subset::of_ranks(z10, {1, 3, 5, 7, 9});
    auto reports = check_density_bounds(odds);
    REQUIRE(reports.size() == 3);
    const BoundReport* global = nullptr;
    const BoundReport* type3 = nullptr;
    for (const BoundReport& r : reports) {
        if (r.check_name == "density_global") global = &r;
        if (r.check_name == "density_type3") type3 = &r;
    }
    REQUIRE(global != nullptr);
    REQUIRE(type3 != nullptr);
    CHECK(global->outcome == Outcome::Holds);
    CHECK(global->lhs.approx == global->rhs.approx);
    CHECK(type3->outcome == Outcome::NotApplicable);  // Z10 is type I

    Subset full = Subset::full(z10);
    for (const BoundReport& r : check_density_bounds(full))
        if (r.check_name == "density_global") CHECK(r.outcome == Outcome::Holds);

    // Type III group: the refined bound applies.
    AbelianGroup z7 = make_group({7});
    Subset f7 = Subset::of_ranks(z7, {2, 3});
    for (const BoundReport& r : check_density_bounds(f7))
        if (r.check_name == "density_type3") {
            CHECK(r.outcome == Outcome::Holds);
        }

    std::uint64_t id = 900;
    std::uint64_t seen = 0;
    for (const AbelianGroup& g : {make_group({30}), make_group({7, 7}), make_group({60})}) {
        for (std::uint64_t s = 0; s < 56; ++s) {
            SplitMix64 rng = derive_stream(25, ++id);
            Subset f = sample_subset(g, rng, sample_probability(g, s));
            for (const BoundReport& r : check_density_bounds(f)) {
                if (r.check_name == "density_empirical") continue;
                if (r.applicable()) CHECK(r.outcome == Outcome::Holds);
            }
            ++seen;
        }
    }
    CHECK(seen >= 168);
}

TEST_CASE("edge coset density needs extreme preconditions") {
    // At this scale delta <= 2^-50/q^5 forces delta = 0, and delta = 0 with
    // |F| > mu * n cannot happen, so the check reports not applicable.
    AbelianGroup z7 = make_group({7});
    CHECK(check_edge_coset_density(Subset::of_ranks(z7, {2, 3})).outcome ==
          Outcome::NotApplicable);
    CHECK(check_edge_coset_density(Subset::full(z7)).outcome == Outcome::NotApplicable);
    CHECK(check_edge_coset_density(Subset(z7)).outcome == Outcome::NotApplicable);
}

TEST_CASE("schur backend check ties the two counters") {
    AbelianGroup g = make_group({2, 8});
    std::uint64_t id = 777;
    for (std::uint64_t s = 0; s < 6; ++s) {
        SplitMix64 rng = derive_stream(26, ++id);
        Subset f = sample_subset(g, rng, 0.4);
        BoundReport r = check_schur_backend(f);
        CHECK(r.outcome == Outcome::Holds);
        CHECK(r.lhs.approx == r.rhs.approx);
    }
}
