#pragma once

#include "sumfree/numeric.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace sumfree {

/// A finite abelian group in canonical invariant-factor form
/// Z_{m1} x ... x Z_{mr} with m1 | m2 | ... | mr. The trivial group is the
/// empty factor list (order 1, exponent 1). Immutable after construction.
///
/// Elements are addressed two ways: as coordinate tuples (x1,...,xr) with
/// 0 <= xi < mi, and as a mixed-radix rank index in [0, n) with the first
/// factor most significant. Rank 0 is the identity.
class AbelianGroup {
  public:
    AbelianGroup() : order_(1), exponent_(1) {}

    explicit AbelianGroup(std::vector<std::uint64_t> canonical_factors)
        : factors_(std::move(canonical_factors)) {
        order_ = 1;
        for (std::uint64_t f : factors_) {
            if (f < 2) throw std::invalid_argument("invariant factor < 2");
            if (order_ > (std::uint64_t(1) << 62) / f)
                throw std::invalid_argument("group order overflows 64-bit range");
            order_ *= f;
        }
        exponent_ = factors_.empty() ? 1 : factors_.back();
        for (std::size_t i = 0; i + 1 < factors_.size(); ++i)
            if (factors_[i + 1] % factors_[i] != 0)
                throw std::invalid_argument("factors do not form a divisibility chain");
        place_.resize(factors_.size());
        std::uint64_t w = 1;
        for (std::size_t i = factors_.size(); i-- > 0;) {
            place_[i] = w;
            w *= factors_[i];
        }
    }

    const std::vector<std::uint64_t>& factors() const { return factors_; }
    std::uint64_t order() const { return order_; }
    std::uint64_t exponent() const { return exponent_; }
    std::size_t rank() const { return factors_.size(); }
    bool trivial() const { return order_ == 1; }

    std::vector<std::uint32_t> coords_of(std::uint64_t rank_index) const {
        if (rank_index >= order_) throw std::out_of_range("rank index out of range");
        std::vector<std::uint32_t> c(factors_.size());
        for (std::size_t i = 0; i < factors_.size(); ++i) {
            c[i] = static_cast<std::uint32_t>(rank_index / place_[i]);
            rank_index %= place_[i];
        }
        return c;
    }

    std::uint64_t rank_of(const std::vector<std::uint32_t>& coords) const {
        if (coords.size() != factors_.size())
            throw std::invalid_argument("coordinate count does not match group rank");
        std::uint64_t r = 0;
        for (std::size_t i = 0; i < coords.size(); ++i) {
            if (coords[i] >= factors_[i]) throw std::out_of_range("coordinate out of range");
            r += std::uint64_t(coords[i]) * place_[i];
        }
        return r;
    }

    std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
        if (a >= order_ || b >= order_) throw std::out_of_range("rank index out of range");
        std::uint64_t r = 0;
        for (std::size_t i = 0; i < factors_.size(); ++i) {
            std::uint64_t xa = a / place_[i], xb = b / place_[i];
            a %= place_[i];
            b %= place_[i];
            std::uint64_t s = xa + xb;
            if (s >= factors_[i]) s -= factors_[i];
            r += s * place_[i];
        }
        return r;
    }

    std::uint64_t neg(std::uint64_t a) const {
        if (a >= order_) throw std::out_of_range("rank index out of range");
        std::uint64_t r = 0;
        for (std::size_t i = 0; i < factors_.size(); ++i) {
            std::uint64_t x = a / place_[i];
            a %= place_[i];
            r += (x ? factors_[i] - x : 0) * place_[i];
        }
        return r;
    }

    static constexpr std::uint64_t zero() { return 0; }

    /// Canonical group spec string, same grammar make_group parses.
    std::string spec() const {
        if (factors_.empty()) return "1";
        std::ostringstream os;
        for (std::size_t i = 0; i < factors_.size(); ++i) {
            if (i) os << ',';
            os << factors_[i];
        }
        return os.str();
    }

    bool operator==(const AbelianGroup& o) const { return factors_ == o.factors_; }

  private:
    std::vector<std::uint64_t> factors_;
    std::vector<std::uint64_t> place_;  // mixed-radix place values, factor 0 most significant
    std::uint64_t order_;
    std::uint64_t exponent_;
};

/// Builds the canonical invariant-factor form of Z_{f1} x ... x Z_{fk}.
/// The factors are split into prime powers and regrouped: for each prime,
/// exponents are right-aligned against the largest invariant factor, which
/// yields the divisibility chain.
inline AbelianGroup make_group(const std::vector<std::uint64_t>& cyclic_factors) {
    for (std::uint64_t f : cyclic_factors)
        if (f < 2) throw std::invalid_argument("cyclic factor must be >= 2");
    std::map<std::uint64_t, std::vector<unsigned>> prime_exps;
    for (std::uint64_t f : cyclic_factors)
        for (auto [p, e] : factorize(f)) prime_exps[p].push_back(e);
    std::size_t rank = 0;
    for (auto& [p, exps] : prime_exps) {
        std::sort(exps.begin(), exps.end());
        rank = std::max(rank, exps.size());
    }
    std::vector<std::uint64_t> inv(rank, 1);
    for (auto& [p, exps] : prime_exps) {
        // largest exponent lands in the last invariant factor
        for (std::size_t i = 0; i < exps.size(); ++i) {
            std::uint64_t pe = 1;
            for (unsigned k = 0; k < exps[i]; ++k) pe *= p;
            inv[rank - exps.size() + i] *= pe;
        }
    }
    return AbelianGroup(std::move(inv));
}

/// Parses the group spec grammar: comma-separated cyclic factors, e.g. "12"
/// or "2,6". "1" (and the empty string) denote the trivial group.
inline AbelianGroup parse_group_spec(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty() || s == "1") return AbelianGroup{};
    std::vector<std::uint64_t> factors;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        auto comma = s.find(',', pos);
        std::string tok = s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        if (tok.empty()) throw std::invalid_argument("bad group spec: " + text);
        std::uint64_t v = 0;
        auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size())
            throw std::invalid_argument("bad group spec: " + text);
        factors.push_back(v);
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return make_group(factors);
}

/// Classification of G by the residues mod 3 of the prime divisors of n.
struct GroupType {
    enum class Tag { I, II, III } tag;
    std::uint64_t p = 0;  // witness prime for type I(p): least prime divisor = 2 (mod 3)

    std::string str() const {
        switch (tag) {
            case Tag::I: return "I(" + std::to_string(p) + ")";
            case Tag::II: return "II";
            default: return "III";
        }
    }
};

inline GroupType classify(const AbelianGroup& g) {
    std::uint64_t least = 0;
    bool has3 = false;
    for (auto [p, e] : factorize(g.order())) {
        if (p % 3 == 2 && (least == 0 || p < least)) least = p;
        if (p == 3) has3 = true;
    }
    if (least) return {GroupType::Tag::I, least};
    if (has3) return {GroupType::Tag::II, 0};
    return {GroupType::Tag::III, 0};
}

/// Density of a largest sum-free subset, as an exact rational:
/// 1/3 + 1/(3p) for type I(p), 1/3 for type II, 1/3 - 1/(3m) for type III.
inline Rational mu(const AbelianGroup& g) {
    if (g.trivial())
        throw std::invalid_argument("mu is undefined for the trivial group");
    GroupType t = classify(g);
    switch (t.tag) {
        case GroupType::Tag::I: return Rational(1, 3) + Rational(1, 3 * BigInt(t.p));
        case GroupType::Tag::II: return Rational(1, 3);
        default: return Rational(1, 3) - Rational(1, 3 * BigInt(g.exponent()));
    }
}

/// mu(G) * n, which is an integer for every nontrivial abelian group.
inline std::uint64_t mu_times_order(const AbelianGroup& g) {
    Rational v = mu(g) * g.order();
    if (denominator(v) != 1)
        throw consistency_error("mu(G)*n is not an integer for " + g.spec());
    return numerator(v).convert_to<std::uint64_t>();
}

namespace detail {

inline void partitions_of(unsigned n, std::vector<std::vector<unsigned>>& out) {
    std::vector<unsigned> cur;
    // descending parts, recursive
    auto rec = [&](auto&& self, unsigned rest, unsigned maxpart) -> void {
        if (rest == 0) {
            out.push_back(cur);
            return;
        }
        for (unsigned part = std::min(rest, maxpart); part >= 1; --part) {
            cur.push_back(part);
            self(self, rest - part, part);
            cur.pop_back();
        }
    };
    rec(rec, n, n);
}

}  // namespace detail

/// One representative per isomorphism class of abelian groups of order up to
/// max_order, ordered by ascending order then lexicographic factor list.
inline std::vector<AbelianGroup> enumerate_groups(std::uint64_t max_order) {
    if (max_order < 1) throw std::invalid_argument("max_order must be >= 1");
    std::vector<AbelianGroup> out;
    for (std::uint64_t n = 1; n <= max_order; ++n) {
        auto primes = factorize(n);
        // all partitions of each prime exponent
        std::vector<std::vector<std::vector<unsigned>>> parts(primes.size());
        for (std::size_t i = 0; i < primes.size(); ++i)
            detail::partitions_of(primes[i].second, parts[i]);
        std::vector<std::size_t> pick(primes.size(), 0);
        std::vector<std::vector<std::uint64_t>> factor_lists;
        while (true) {
            std::size_t rank = 0;
            for (std::size_t i = 0; i < primes.size(); ++i)
                rank = std::max(rank, parts[i][pick[i]].size());
            std::vector<std::uint64_t> inv(rank, 1);
            for (std::size_t i = 0; i < primes.size(); ++i) {
                const auto& lam = parts[i][pick[i]];  // descending parts
                for (std::size_t j = 0; j < lam.size(); ++j) {
                    std::uint64_t pe = 1;
                    for (unsigned k = 0; k < lam[j]; ++k) pe *= primes[i].first;
                    inv[rank - 1 - j] *= pe;  // largest part into the last factor
                }
            }
            factor_lists.push_back(std::move(inv));
            std::size_t i = 0;
            for (; i < primes.size(); ++i) {
                if (++pick[i] < parts[i].size()) break;
                pick[i] = 0;
            }
            if (i == primes.size()) break;
        }
        std::sort(factor_lists.begin(), factor_lists.end());
        factor_lists.erase(std::unique(factor_lists.begin(), factor_lists.end()),
                           factor_lists.end());
        for (auto& fl : factor_lists) out.emplace_back(std::move(fl));
    }
    return out;
}

}  // namespace sumfree
