#pragma once

#include "sumfree/subset.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

namespace sumfree {

/// F is sum-free when no x, y, z in F satisfy x + y = z (x = y allowed).
inline bool is_sumfree(const Subset& f) {
    const AbelianGroup& g = f.group();
    auto members = f.ranks();
    for (std::uint64_t x : members)
        for (std::uint64_t y : members)
            if (f.contains(g.add(x, y))) return false;
    return true;
}

/// Order ceilings for the exhaustive routines. The env var SUMFREE_LAB_LIMIT
/// overrides the count ceiling at call time, so long runs are an explicit
/// decision. The search ceiling tracks the 128-bit masks in max_sumfree.
struct EnumLimits {
    std::uint64_t count = 48;
    std::uint64_t search = 128;
};

namespace detail {

inline std::optional<std::uint64_t> env_limit() {
    if (const char* env = std::getenv("SUMFREE_LAB_LIMIT")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return v;
    }
    return std::nullopt;
}

}  // namespace detail

inline std::uint64_t effective_count_limit(const EnumLimits& lim) {
    return detail::env_limit().value_or(lim.count);
}

/// The search ceiling also honors the env var but never exceeds the 128-bit
/// mask backend.
inline std::uint64_t effective_search_limit(const EnumLimits& lim) {
    return std::min<std::uint64_t>(detail::env_limit().value_or(lim.search), 128);
}

namespace detail {

/// Shared precomputation for the mask-based searches: addition and negation
/// tables plus, per element e, the mask of w with w + w = e. With those, a
/// candidate w extends a sum-free chosen set iff w avoids a forbid mask and
/// chosen avoids halves(w); both are O(1) mask tests per ancestor update.
struct MaskTables {
    std::vector<std::vector<std::uint64_t>> add;
    std::vector<std::uint64_t> neg;

    explicit MaskTables(const AbelianGroup& g) {
        const std::uint64_t n = g.order();
        add.assign(n, std::vector<std::uint64_t>(n));
        neg.resize(n);
        for (std::uint64_t a = 0; a < n; ++a) {
            neg[a] = g.neg(a);
            for (std::uint64_t b = 0; b < n; ++b) add[a][b] = g.add(a, b);
        }
    }
};

}  // namespace detail

/// Counts all sum-free subsets of G, the empty set included. Backtracks over
/// elements in descending rank with a forbid mask holding every element whose
/// inclusion would close a triple with the chosen set: pairwise sums s + t,
/// differences s - t, zero, and the halves of each chosen element.
inline std::uint64_t count_sumfree(const AbelianGroup& g, const EnumLimits& lim = {}) {
    const std::uint64_t n = g.order();
    const std::uint64_t cap = effective_count_limit(lim);
    if (n > cap)
        throw limit_error("count_sumfree: order " + std::to_string(n) + " exceeds limit " +
                          std::to_string(cap));
    if (n > 64) throw limit_error("count_sumfree: order above the 64-bit mask backend");
    detail::MaskTables t(g);

    // halves[e]: mask of w with w + w = e (forbidden once e is chosen).
    std::vector<std::uint64_t> halves(n, 0);
    for (std::uint64_t w = 0; w < n; ++w) halves[t.add[w][w]] |= std::uint64_t(1) << w;

    std::uint64_t total = 0;
    // Iterative stack: (next candidate rank, forbid mask, chosen mask).
    struct Frame {
        std::uint64_t next;
        std::uint64_t forbid;
        std::uint64_t chosen;
    };
    std::vector<Frame> stack;
    stack.push_back({n, std::uint64_t(1) << 0, 0});  // zero alone closes 0+0=0
    while (!stack.empty()) {
        Frame fr = stack.back();
        stack.pop_back();
        ++total;  // each frame is one sum-free set (the chosen mask)
        for (std::uint64_t e = fr.next; e-- > 0;) {
            if ((fr.forbid >> e) & 1) continue;
            if (fr.chosen & halves[e]) continue;
            std::uint64_t forbid = fr.forbid | halves[e] | (std::uint64_t(1) << t.add[e][e]);
            for (std::uint64_t s = fr.chosen; s;) {
                std::uint64_t c = std::countr_zero(s);
                s &= s - 1;
                forbid |= std::uint64_t(1) << t.add[e][c];
                forbid |= std::uint64_t(1) << t.add[c][t.neg[e]];
                forbid |= std::uint64_t(1) << t.add[e][t.neg[c]];
            }
            stack.push_back({e, forbid, fr.chosen | (std::uint64_t(1) << e)});
        }
    }
    return total;
}

/// sigma(G) = log2(count) / n, the per-element entropy of the census.
inline double sigma(const AbelianGroup& g, const EnumLimits& lim = {}) {
    std::uint64_t c = count_sumfree(g, lim);
    return std::log2(double(c)) / double(g.order());
}

namespace detail {

struct Mask128 {
    std::array<std::uint64_t, 2> w{0, 0};

    bool test(std::uint64_t i) const { return (w[i >> 6] >> (i & 63)) & 1; }
    void set(std::uint64_t i) { w[i >> 6] |= std::uint64_t(1) << (i & 63); }
    Mask128 operator|(const Mask128& o) const { return {{w[0] | o.w[0], w[1] | o.w[1]}}; }
    bool intersects(const Mask128& o) const { return (w[0] & o.w[0]) | (w[1] & o.w[1]); }
    int popcount() const { return std::popcount(w[0]) + std::popcount(w[1]); }
};

}  // namespace detail

struct MaxSumfree {
    std::uint64_t size = 0;
    std::vector<std::uint64_t> witness;  // member ranks, ascending
};

/// Largest sum-free subset by branch and bound. Elements are tried in
/// descending rank; a branch is cut when chosen plus everything still
/// allowed cannot beat the incumbent. Strict improvement keeps the first
/// maximum witness found, so the result is deterministic.
inline MaxSumfree max_sumfree(const AbelianGroup& g, const EnumLimits& lim = {}) {
    const std::uint64_t n = g.order();
    const std::uint64_t cap = effective_search_limit(lim);
    if (n > cap)
        throw limit_error("max_sumfree: order " + std::to_string(n) + " exceeds limit " +
                          std::to_string(cap));
    detail::MaskTables t(g);
    std::vector<detail::Mask128> halves(n);
    for (std::uint64_t w = 0; w < n; ++w) halves[t.add[w][w]].set(w);

    detail::Mask128 best_mask;
    int best = 0;
    bool have_best = false;

    struct Frame {
        std::uint64_t next;
        detail::Mask128 forbid;
        detail::Mask128 chosen;
        int free_below;  // candidates with rank < next not yet forbidden
    };

    auto count_free = [&](std::uint64_t next, const detail::Mask128& forbid,
                          const detail::Mask128& chosen) {
        int k = 0;
        for (std::uint64_t e = next; e-- > 0;)
            if (!forbid.test(e) && !chosen.intersects(halves[e])) ++k;
        return k;
    };

    std::vector<Frame> stack;
    {
        detail::Mask128 forbid;
        forbid.set(0);
        detail::Mask128 none;
        stack.push_back({n, forbid, none, count_free(n, forbid, none)});
    }
    while (!stack.empty()) {
        Frame fr = stack.back();
        stack.pop_back();
        int size = fr.chosen.popcount();
        if (!have_best || size > best) {
            best = size;
            best_mask = fr.chosen;
            have_best = true;
        }
        if (size + fr.free_below <= best) continue;
        // Children are pushed ascending so the highest candidate pops first;
        // that keeps the search order equal to the recursive descending scan.
        std::vector<Frame> children;
        for (std::uint64_t e = fr.next; e-- > 0;) {
            if (fr.forbid.test(e)) continue;
            if (fr.chosen.intersects(halves[e])) continue;
            detail::Mask128 forbid = fr.forbid | halves[e];
            forbid.set(t.add[e][e]);
            for (int half = 0; half < 2; ++half) {
                std::uint64_t s = fr.chosen.w[half];
                while (s) {
                    std::uint64_t c = std::uint64_t(half) * 64 + std::countr_zero(s);
                    s &= s - 1;
                    forbid.set(t.add[e][c]);
                    forbid.set(t.add[c][t.neg[e]]);
                    forbid.set(t.add[e][t.neg[c]]);
                }
            }
            detail::Mask128 chosen = fr.chosen;
            chosen.set(e);
            children.push_back({e, forbid, chosen, count_free(e, forbid, chosen)});
        }
        for (auto it = children.rbegin(); it != children.rend(); ++it) stack.push_back(*it);
    }

    MaxSumfree out;
    out.size = std::uint64_t(best);
    for (std::uint64_t e = 0; e < n; ++e)
        if (best_mask.test(e)) out.witness.push_back(e);
    return out;
}

struct CensusRow {
    std::uint64_t order = 0;
    std::string group_spec;
    std::uint64_t sumfree_count = 0;
    double sigma_value = 0;
    std::optional<Rational> mu_value;  // absent for the trivial group
};

/// Census for one group: the sum-free count, sigma, and mu. The trivial
/// group has exactly one sum-free set (the empty one) and no mu.
inline CensusRow census(const AbelianGroup& g, const EnumLimits& lim = {}) {
    CensusRow row;
    row.order = g.order();
    row.group_spec = g.spec();
    row.sumfree_count = count_sumfree(g, lim);
    row.sigma_value = std::log2(double(row.sumfree_count)) / double(g.order());
    if (!g.trivial()) row.mu_value = mu(g);
    return row;
}

}  // namespace sumfree
