#pragma once

#include "sumfree/subset.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sumfree {

/// A character of a finite abelian group, identified with an element
/// a = (a1,...,ar) of the group itself: the character maps x to
/// exp(2*pi*i * sum_i a_i x_i / m_i). Phases are carried as exact integer
/// numerators over the group exponent m, so equal phases compare exactly.
class Character {
  public:
    Character(AbelianGroup owner, std::uint64_t coeff_rank)
        : group_(std::move(owner)), coeff_rank_(coeff_rank) {
        coeffs_ = group_.coords_of(coeff_rank);
        const auto& m = group_.factors();
        order_ = 1;
        phase_weight_.resize(m.size());
        for (std::size_t i = 0; i < m.size(); ++i) {
            std::uint64_t g = std::gcd<std::uint64_t>(coeffs_[i], m[i]);
            order_ = std::lcm(order_, m[i] / g);
            // a_i / m_i == a_i * (m / m_i) / m
            phase_weight_[i] = (group_.exponent() / m[i]) * coeffs_[i] % group_.exponent();
        }
    }

    const AbelianGroup& group() const { return group_; }
    const std::vector<std::uint32_t>& coeffs() const { return coeffs_; }
    std::uint64_t coeff_rank() const { return coeff_rank_; }
    std::uint64_t order() const { return order_; }
    bool trivial() const { return coeff_rank_ == 0; }

    /// Exact phase numerator u in [0, m): the character value at x is
    /// exp(2*pi*i * u / m). Additive mod m across the group law.
    std::uint64_t phase_numerator(std::uint64_t element_rank) const {
        auto x = group_.coords_of(element_rank);
        std::uint64_t m = group_.exponent();
        std::uint64_t u = 0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            unsigned __int128 term = static_cast<unsigned __int128>(phase_weight_[i]) * x[i];
            u = static_cast<std::uint64_t>((term + u) % m);
        }
        return u;
    }

    std::complex<double> eval(std::uint64_t element_rank) const {
        double t = 2.0 * std::numbers::pi *
                   (double(phase_numerator(element_rank)) / double(group_.exponent()));
        return {std::cos(t), std::sin(t)};
    }

    std::string spec() const {
        if (coeffs_.empty()) return "0";
        std::string s;
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            if (i) s += ',';
            s += std::to_string(coeffs_[i]);
        }
        return s;
    }

  private:
    AbelianGroup group_;
    std::uint64_t coeff_rank_;
    std::vector<std::uint32_t> coeffs_;
    std::vector<std::uint64_t> phase_weight_;  // (m/m_i) * a_i mod m
    std::uint64_t order_;
};

/// All n characters, trivial first, ordered by coefficient rank.
inline std::vector<Character> all_characters(const AbelianGroup& g) {
    std::vector<Character> out;
    out.reserve(g.order());
    for (std::uint64_t r = 0; r < g.order(); ++r) out.emplace_back(g, r);
    return out;
}

inline std::uint64_t character_order(const Character& c) { return c.order(); }

/// Parses character coeffs in the same grammar as group element coordinates:
/// comma-separated residues, one per invariant factor ("0" for the trivial
/// group's character).
inline Character parse_character_spec(const AbelianGroup& g, const std::string& text) {
    if (g.trivial()) return Character(g, 0);
    std::vector<std::uint32_t> coords;
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        auto comma = s.find(',', pos);
        std::string tok = s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        std::uint32_t v = 0;
        auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (tok.empty() || res.ec != std::errc{} || res.ptr != tok.data() + tok.size())
            throw std::invalid_argument("bad character spec: " + text);
        coords.push_back(v);
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (coords.size() != g.factors().size())
        throw std::invalid_argument("bad character spec: " + text);
    for (std::size_t i = 0; i < coords.size(); ++i)
        if (coords[i] >= g.factors()[i])
            throw std::invalid_argument("character coefficient out of range: " + text);
    return Character(g, g.rank_of(coords));
}

namespace detail {

/// Per-phase-numerator member counts of F under a character: bucket[u] is
/// the number of members with phase u/m. Sums over buckets evaluate the
/// transform with one trig call per distinct phase.
inline std::vector<std::uint32_t> phase_buckets(const Subset& f, const Character& c) {
    std::vector<std::uint32_t> bucket(c.group().exponent(), 0);
    for (std::uint64_t r : f.ranks()) ++bucket[c.phase_numerator(r)];
    return bucket;
}

struct TrigTable {
    std::vector<double> cos_v, sin_v;
    explicit TrigTable(std::uint64_t m) : cos_v(m), sin_v(m) {
        for (std::uint64_t t = 0; t < m; ++t) {
            double a = 2.0 * std::numbers::pi * (double(t) / double(m));
            cos_v[t] = std::cos(a);
            sin_v[t] = std::sin(a);
        }
    }
};

}  // namespace detail

/// The Fourier coefficient of a subset: sum of the character over members.
inline std::complex<double> fourier_transform(const Subset& f, const Character& c) {
    require_same_group(f, c.group(), "fourier_transform");
    const std::uint64_t m = c.group().exponent();
    detail::TrigTable trig(m);
    auto bucket = detail::phase_buckets(f, c);
    double re = 0, im = 0;
    for (std::uint64_t t = 0; t < m; ++t) {
        if (!bucket[t]) continue;
        re += double(bucket[t]) * trig.cos_v[t];
        im += double(bucket[t]) * trig.sin_v[t];
    }
    return {re, im};
}

/// The special direction of F: the nontrivial character minimizing the real
/// part of the transform, together with that minimum. Ties resolve to the
/// smallest coefficient rank, so the choice is independent of evaluation
/// precision for strict minimizers and of value noise for exact ties.
inline std::pair<Character, double> special_direction(const Subset& f) {
    const AbelianGroup& g = f.group();
    if (g.trivial())
        throw std::invalid_argument("special_direction requires a group of order >= 2");
    const std::uint64_t m = g.exponent();
    detail::TrigTable trig(m);
    auto members = f.ranks();
    std::uint64_t best_rank = 1;
    double best_re = 0;
    bool first = true;
    for (std::uint64_t cr = 1; cr < g.order(); ++cr) {
        Character c(g, cr);
        std::vector<std::uint32_t> bucket(m, 0);
        for (std::uint64_t r : members) ++bucket[c.phase_numerator(r)];
        double re = 0;
        for (std::uint64_t t = 0; t < m; ++t)
            if (bucket[t]) re += double(bucket[t]) * trig.cos_v[t];
        if (first || re < best_re) {
            best_re = re;
            best_rank = cr;
            first = false;
        }
    }
    return {Character(g, best_rank), best_re};
}

}  // namespace sumfree
