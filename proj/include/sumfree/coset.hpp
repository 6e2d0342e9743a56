#pragma once

#include "sumfree/schur.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sumfree {

enum class Outcome { Holds, Fails, NotApplicable };

inline const char* outcome_str(Outcome o) {
    switch (o) {
        case Outcome::Holds: return "true";
        case Outcome::Fails: return "false";
        default: return "na";
    }
}

/// One side of a bound: exact rational whenever the quantity is rational,
/// floating otherwise. approx is always filled, so margins are uniform.
struct NumValue {
    std::optional<Rational> exact;
    double approx = 0;

    static NumValue of(Rational r) {
        NumValue v;
        v.approx = to_double(r);
        v.exact = std::move(r);
        return v;
    }
    static NumValue of(double d) {
        NumValue v;
        v.approx = d;
        return v;
    }
    std::string str() const { return exact ? format_rational(*exact) : format_double(approx); }
};

struct CheckContext {
    std::string group;      // group spec
    std::string subset;     // subset spec (hex mask)
    std::string character;  // coefficient list, empty when no character applies
    std::string params;     // extra inputs as "k=v;k=v", empty when none
};

struct BoundReport {
    std::string check_name;
    NumValue lhs, rhs;
    Outcome outcome = Outcome::NotApplicable;
    CheckContext context;

    bool holds() const { return outcome == Outcome::Holds; }
    bool applicable() const { return outcome != Outcome::NotApplicable; }

    /// Distance to violation; smaller is closer. Infinite when not applicable
    /// so aggregation prefers any applicable instance.
    double margin() const {
        return applicable() ? rhs.approx - lhs.approx : std::numeric_limits<double>::infinity();
    }
};

/// Tunables for the conditional checks. eta gates cosine_sum (delta <=
/// eta/5); eta_edge and q0 gate edge_coset_density; c sets the extremal
/// capacity t_c = 1 + 1/c; C_empirical scales the recorded cube-root
/// density bound; delta0 is the slack the extremal minimum certifies.
struct ConstantsConfig {
    double eta = 0x1p-20;
    double eta_edge = 0x1p-50;
    double delta0 = (1.0 / 6.0 - 1.0 / (2.0 * std::numbers::pi) - 0x1p-20) / 8.0;
    int q0 = 11;
    double c = 10.0;
    double C_empirical = 4.0;
};

/// Partition of F along a character of order q: H_j is the preimage of the
/// j-th q-th root of unity, the counts are |F ∩ H_j| and alpha_j that count
/// over the coset size n/q. Indices are residues mod q.
struct CosetProfile {
    explicit CosetProfile(Character c) : character(std::move(c)) {}

    Character character;
    std::uint64_t q = 1;
    std::uint64_t coset_size = 0;
    std::vector<std::uint64_t> part_counts;
    std::vector<Rational> alphas;
    std::optional<std::uint64_t> k;                   // (q - 1) / 6 when q = 1 mod 6
    std::vector<std::vector<std::uint64_t>> members;  // ranks per coset, ascending

    const Rational& alpha(std::uint64_t i) const { return alphas[i % q]; }
    std::uint64_t count(std::uint64_t i) const { return part_counts[i % q]; }
};

/// Coset index of an element: with exact phase u/m and character order q,
/// the index is uq/m. uq is a multiple of m because the character's q-th
/// power is trivial; anything else is a consistency fault.
inline std::uint64_t coset_index(const Character& c, std::uint64_t element_rank) {
    const std::uint64_t m = c.group().exponent();
    unsigned __int128 uq =
        static_cast<unsigned __int128>(c.phase_numerator(element_rank)) * c.order();
    if (uq % m != 0) throw consistency_error("character phase is not a multiple of 1/q");
    return static_cast<std::uint64_t>(uq / m % c.order());
}

inline CosetProfile coset_profile(const Subset& f, const Character& c) {
    require_same_group(f, c.group(), "coset_profile");
    if (c.trivial()) throw std::invalid_argument("coset_profile needs a nontrivial character");
    const std::uint64_t n = c.group().order();
    const std::uint64_t q = c.order();
    if (n % q != 0) throw consistency_error("character order does not divide group order");
    CosetProfile p(c);
    p.q = q;
    p.coset_size = n / q;
    p.part_counts.assign(q, 0);
    p.members.assign(q, {});
    for (std::uint64_t r : f.ranks()) {
        std::uint64_t j = coset_index(c, r);
        ++p.part_counts[j];
        p.members[j].push_back(r);
    }
    std::uint64_t total = 0;
    p.alphas.reserve(q);
    for (std::uint64_t j = 0; j < q; ++j) {
        total += p.part_counts[j];
        p.alphas.emplace_back(Rational(p.part_counts[j]) / p.coset_size);
        if (p.alphas[j] < 0 || p.alphas[j] > 1) throw consistency_error("coset density out of range");
    }
    if (total != f.size()) throw consistency_error("coset partition lost members");
    if (q % 6 == 1) p.k = (q - 1) / 6;
    return p;
}

/// For q = 6k + 1, the interval {k+1,...,5k} mod q splits into 2k disjoint
/// pairs (i, 2i): doubling {k+1,...,2k} gives the even residues of
/// {2k+1,...,4k} and doubling {4k+1,...,5k} gives the odd ones.
inline std::vector<std::pair<std::uint64_t, std::uint64_t>> middle_interval_pairs(
    std::uint64_t q) {
    if (q < 7 || q % 6 != 1)
        throw std::invalid_argument("middle_interval_pairs needs q = 6k + 1, q >= 7");
    const std::uint64_t k = (q - 1) / 6;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;
    pairs.reserve(2 * k);
    for (std::uint64_t i = k + 1; i <= 2 * k; ++i) pairs.emplace_back(i, 2 * i % q);
    for (std::uint64_t i = 4 * k + 1; i <= 5 * k; ++i) pairs.emplace_back(i, 2 * i % q);
    return pairs;
}

namespace detail {

inline CheckContext context_of(const Subset& f) { return {f.group().spec(), f.spec(), "", ""}; }

inline Outcome outcome_of(bool holds) { return holds ? Outcome::Holds : Outcome::Fails; }

/// alpha <= base + coef * delta^{1/3}: exact after cubing the excess, with
/// a floating fallback at additive tolerance tol.
inline bool leq_plus_cbrt(const Rational& alpha, const Rational& base, const Rational& coef,
                          const Rational& delta, double tol = 1e-9) {
    Rational excess = alpha - base;
    if (excess <= 0) return true;
    if (excess * excess * excess <= coef * coef * coef * delta) return true;
    double rhs = to_double(base) + to_double(coef) * std::cbrt(to_double(delta));
    return to_double(alpha) <= rhs + tol;
}

}  // namespace detail

/// Agreement of the two triple-counting backends. lhs and rhs are the two
/// counts; a transform result too far from an integer counts as a failure.
inline BoundReport check_schur_backend(const Subset& f) {
    BoundReport r;
    r.check_name = "schur_backend";
    r.context = detail::context_of(f);
    SchurStats brute = schur_count_bruteforce(f);
    r.lhs = NumValue::of(Rational(brute.triples));
    FourierCountDiagnostics diag;
    try {
        SchurStats transform = schur_count_fourier(f, &diag);
        r.rhs = NumValue::of(Rational(transform.triples));
        r.outcome = detail::outcome_of(brute.triples == transform.triples);
    } catch (const consistency_error&) {
        r.rhs = NumValue::of(diag.raw);
        r.outcome = Outcome::Fails;
    }
    return r;
}

/// Pairs (x, y) with x in F_l, y in F_j and x + y in F number at least
/// |F_l| (|F_j| + |F_{j+l}| - n/q) when that is positive. lhs is the bound,
/// rhs the exact pair count.
inline BoundReport check_triple_lower_bound(const Subset& f, const CosetProfile& p,
                                            std::uint64_t l, std::uint64_t j) {
    require_same_group(f, p.character.group(), "check_triple_lower_bound");
    const AbelianGroup& g = f.group();
    l %= p.q;
    j %= p.q;
    BigInt lower =
        BigInt(p.count(l)) * (BigInt(p.count(j)) + BigInt(p.count(j + l)) - BigInt(p.coset_size));
    if (lower < 0) lower = 0;
    std::uint64_t pairs = 0;
    for (std::uint64_t x : p.members[l])
        for (std::uint64_t y : p.members[j])
            if (f.contains(g.add(x, y))) ++pairs;
    BoundReport r;
    r.check_name = "triple_lower_bound";
    r.lhs = NumValue::of(Rational(lower));
    r.rhs = NumValue::of(Rational(pairs));
    r.outcome = detail::outcome_of(lower <= pairs);
    r.context = detail::context_of(f);
    r.context.character = p.character.spec();
    r.context.params = "l=" + std::to_string(l) + ";j=" + std::to_string(j);
    return r;
}

/// alpha_j + alpha_{j+l} <= 1 + delta q^2 / alpha_l for every l with
/// alpha_l > 0 and every j, compared exactly.
inline std::vector<BoundReport> check_coset_pair_bound(const Subset& f, const CosetProfile& p,
                                                       const Rational& delta) {
    std::vector<BoundReport> out;
    const Rational q2 = Rational(p.q) * p.q;
    for (std::uint64_t l = 0; l < p.q; ++l) {
        if (p.alphas[l] == 0) continue;
        const Rational tail = delta * q2 / p.alphas[l];
        for (std::uint64_t j = 0; j < p.q; ++j) {
            Rational lhs = p.alphas[j] + p.alpha(j + l);
            Rational rhs = 1 + tail;
            BoundReport r;
            r.check_name = "coset_pair_bound";
            r.lhs = NumValue::of(std::move(lhs));
            r.rhs = NumValue::of(std::move(rhs));
            r.outcome = detail::outcome_of(*r.lhs.exact <= *r.rhs.exact);
            r.context = detail::context_of(f);
            r.context.character = p.character.spec();
            r.context.params = "l=" + std::to_string(l) + ";j=" + std::to_string(j);
            out.push_back(std::move(r));
        }
    }
    return out;
}

/// Indices i with alpha_i + alpha_{2i} >= 1 + t carry total mass at most
/// delta q^2 / t, compared exactly for rational t.
inline BoundReport check_heavy_index_mass(const Subset& f, const CosetProfile& p,
                                          const Rational& t, const Rational& delta) {
    if (t <= 0) throw std::invalid_argument("check_heavy_index_mass needs t > 0");
    Rational lhs = 0;
    const Rational threshold = 1 + t;
    for (std::uint64_t i = 0; i < p.q; ++i)
        if (p.alphas[i] + p.alpha(2 * i) >= threshold) lhs += p.alphas[i];
    Rational rhs = delta * p.q * p.q / t;
    BoundReport r;
    r.check_name = "heavy_index_mass";
    r.outcome = detail::outcome_of(lhs <= rhs);
    r.lhs = NumValue::of(std::move(lhs));
    r.rhs = NumValue::of(std::move(rhs));
    r.context = detail::context_of(f);
    r.context.character = p.character.spec();
    r.context.params = "t=" + format_rational(t);
    return r;
}

/// Middle-interval mass: sum of alpha_i over i in {k+1,...,5k} is at most
/// 2k + 2 sqrt(delta q^3). Exact after squaring the excess over 2k; the
/// floating path carries a 1e-9 additive tolerance.
inline BoundReport check_middle_sum(const Subset& f, const CosetProfile& p,
                                    const Rational& delta) {
    if (!p.k) throw std::invalid_argument("check_middle_sum needs character order 1 mod 6");
    const std::uint64_t k = *p.k;
    Rational lhs = 0;
    for (std::uint64_t i = k + 1; i <= 5 * k; ++i) lhs += p.alphas[i];
    const Rational dq3 = delta * p.q * p.q * p.q;
    const Rational excess = lhs - Rational(2 * k);
    bool exact_ok = excess <= 0 || excess * excess <= 4 * dq3;
    double rhs_f = 2.0 * double(k) + 2.0 * std::sqrt(to_double(dq3));
    bool float_ok = to_double(lhs) <= rhs_f + 1e-9;
    BoundReport r;
    r.check_name = "middle_sum";
    r.lhs = NumValue::of(std::move(lhs));
    r.rhs = delta == 0 ? NumValue::of(Rational(2 * k)) : NumValue::of(rhs_f);
    r.outcome = detail::outcome_of(exact_ok || float_ok);
    r.context = detail::context_of(f);
    r.context.character = p.character.spec();
    return r;
}

/// The minimum of Re Fhat over nontrivial characters is at most
/// ((delta - alpha^3) / (alpha (1 - alpha))) n. lhs is floating (a cosine
/// sum), so the comparison carries a 1e-6 n additive tolerance.
inline BoundReport check_special_direction_bound(const Subset& f) {
    const AbelianGroup& g = f.group();
    const std::uint64_t n = g.order();
    if (f.empty() || f.size() == n)
        throw std::invalid_argument(
            "check_special_direction_bound needs a nonempty proper subset");
    auto [gs, re_min] = special_direction(f);
    Rational delta = schur_count_bruteforce(f).density;
    Rational alpha = f.density();
    Rational rhs = (delta - alpha * alpha * alpha) / (alpha * (1 - alpha)) * n;
    BoundReport r;
    r.check_name = "special_direction_bound";
    r.lhs = NumValue::of(re_min);
    r.outcome = detail::outcome_of(re_min <= to_double(rhs) + 1e-6 * double(n));
    r.rhs = NumValue::of(std::move(rhs));
    r.context = detail::context_of(f);
    r.context.character = gs.spec();
    return r;
}

/// Cosine sum along the special direction for type III groups at density
/// alpha >= mu(G) and delta <= eta/5:
/// q^{-1} sum_j alpha_j cos(2 pi j / q) + mu(Z_q)^2 / (1 - mu(Z_q)) < 6 delta.
/// Report-only: the source inequality is strict and its delta = 0 boundary
/// is recorded rather than asserted. Unmet preconditions yield NotApplicable.
inline BoundReport check_cosine_sum(const Subset& f, const ConstantsConfig& cfg = {}) {
    BoundReport r;
    r.check_name = "cosine_sum";
    r.context = detail::context_of(f);
    const AbelianGroup& g = f.group();
    if (g.trivial() || classify(g).tag != GroupType::Tag::III) return r;
    if (Rational(f.size()) < mu(g) * g.order()) return r;
    Rational delta = schur_count_bruteforce(f).density;
    if (delta > Rational(cfg.eta) / 5) return r;
    auto [gs, re_min] = special_direction(f);
    (void)re_min;
    CosetProfile p = coset_profile(f, gs);
    Rational mu_q = mu(make_group({p.q}));
    double s = 0;
    for (std::uint64_t j = 0; j < p.q; ++j)
        s += to_double(p.alphas[j]) * std::cos(2.0 * std::numbers::pi * double(j) / double(p.q));
    double lhs = s / double(p.q) + to_double(mu_q * mu_q / (1 - mu_q));
    Rational rhs = 6 * delta;
    r.lhs = NumValue::of(lhs);
    r.outcome = detail::outcome_of(lhs < to_double(rhs) + 1e-9);
    r.rhs = NumValue::of(std::move(rhs));
    r.context.character = gs.spec();
    return r;
}

/// Density of F against mu(G): a global bound alpha <= max(1/3, mu + 3
/// delta^{1/3}), its type III refinement alpha <= mu + 1/(3m) + 3 delta^{1/3}
/// (NotApplicable otherwise), and a recorded variant with configurable
/// leading constant. On the trivial group mu is undefined, so all three are
/// NotApplicable.
inline std::vector<BoundReport> check_density_bounds(const Subset& f,
                                                     const ConstantsConfig& cfg = {}) {
    const AbelianGroup& g = f.group();
    std::vector<BoundReport> out(3);
    out[0].check_name = "density_global";
    out[1].check_name = "density_type3";
    out[2].check_name = "density_empirical";
    for (auto& r : out) r.context = detail::context_of(f);
    if (g.trivial()) return out;

    const Rational delta = schur_count_bruteforce(f).density;
    const Rational alpha = f.density();
    const Rational mu_g = mu(g);
    const double cbrt_d = std::cbrt(to_double(delta));
    const Rational third(1, 3);

    {
        BoundReport& r = out[0];
        bool ok = alpha <= third || detail::leq_plus_cbrt(alpha, mu_g, 3, delta);
        r.lhs = NumValue::of(alpha);
        r.rhs = delta == 0
                    ? NumValue::of(std::max(third, mu_g))
                    : NumValue::of(std::max(to_double(third), to_double(mu_g) + 3.0 * cbrt_d));
        r.outcome = detail::outcome_of(ok);
    }
    if (classify(g).tag == GroupType::Tag::III) {
        BoundReport& r = out[1];
        Rational base = mu_g + Rational(1, BigInt(3) * g.exponent());
        bool ok = detail::leq_plus_cbrt(alpha, base, 3, delta);
        r.lhs = NumValue::of(alpha);
        r.rhs = delta == 0 ? NumValue::of(base) : NumValue::of(to_double(base) + 3.0 * cbrt_d);
        r.outcome = detail::outcome_of(ok);
    }
    {
        BoundReport& r = out[2];
        Rational coef(cfg.C_empirical);
        bool ok = detail::leq_plus_cbrt(alpha, mu_g, coef, delta);
        r.lhs = NumValue::of(alpha);
        r.rhs = delta == 0
                    ? NumValue::of(mu_g)
                    : NumValue::of(to_double(mu_g) + to_double(coef) * cbrt_d);
        r.outcome = detail::outcome_of(ok);
        r.context.params = "C=" + format_double(cfg.C_empirical);
    }
    return out;
}

/// Edge-coset densities along a small-order special direction: for type III
/// groups past density mu(G) with delta m^3 < 1, q <= q0 and delta <=
/// eta_edge / q^5, each alpha_i over the index set (default {0,...,k} and
/// {5k+1,...,6k}) stays within 64 delta^{1/3} q^{2/3}. Report-only; the
/// tight preconditions make it NotApplicable at small orders.
inline BoundReport check_edge_coset_density(const Subset& f, const ConstantsConfig& cfg = {},
                                            const std::vector<std::uint64_t>* indices = nullptr) {
    BoundReport r;
    r.check_name = "edge_coset_density";
    r.context = detail::context_of(f);
    const AbelianGroup& g = f.group();
    if (g.trivial() || classify(g).tag != GroupType::Tag::III) return r;
    if (Rational(f.size()) <= mu(g) * g.order()) return r;
    const Rational delta = schur_count_bruteforce(f).density;
    const BigInt m = g.exponent();
    if (delta * m * m * m >= 1) return r;
    auto [gs, re_min] = special_direction(f);
    (void)re_min;
    const std::uint64_t q = gs.order();
    if (q > std::uint64_t(cfg.q0)) return r;
    BigInt q5 = BigInt(q) * q * q * q * q;
    if (delta * q5 > Rational(cfg.eta_edge)) return r;
    CosetProfile p = coset_profile(f, gs);
    if (!p.k) throw consistency_error("type III character order must be 1 mod 6");
    const std::uint64_t k = *p.k;
    std::vector<std::uint64_t> chosen;
    if (indices) {
        chosen = *indices;
        std::string joined;
        for (std::size_t i = 0; i < chosen.size(); ++i) {
            if (i) joined += ',';
            joined += std::to_string(chosen[i]);
        }
        r.context.params = "indices=" + joined;
    } else {
        for (std::uint64_t i = 0; i <= k; ++i) chosen.push_back(i);
        for (std::uint64_t i = 5 * k + 1; i <= 6 * k; ++i) chosen.push_back(i);
    }
    Rational lhs = 0;
    for (std::uint64_t i : chosen) lhs = std::max(lhs, p.alpha(i));
    bool exact_ok = lhs == 0 || lhs * lhs * lhs <= Rational(262144) * delta * q * q;
    double rhs_f = 64.0 * std::cbrt(to_double(delta) * double(q) * double(q));
    bool float_ok = to_double(lhs) <= rhs_f + 1e-9;
    r.lhs = NumValue::of(std::move(lhs));
    r.rhs = delta == 0 ? NumValue::of(Rational(0)) : NumValue::of(rhs_f);
    r.outcome = detail::outcome_of(exact_ok || float_ok);
    r.context.character = gs.spec();
    return r;
}

}  // namespace sumfree
