#pragma once

#include "sumfree/group.hpp"

#include <bit>
#include <cctype>
#include <charconv>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace sumfree {

/// Bit-packed membership over the ranked elements of a group (the set F).
class Subset {
  public:
    Subset() = default;

    explicit Subset(AbelianGroup g)
        : group_(std::move(g)), bits_((group_.order() + 63) / 64, 0) {}

    static Subset full(const AbelianGroup& g) {
        Subset s(g);
        for (std::uint64_t r = 0; r < g.order(); ++r) s.insert(r);
        return s;
    }

    static Subset of_ranks(const AbelianGroup& g, const std::vector<std::uint64_t>& ranks) {
        Subset s(g);
        for (auto r : ranks) s.insert(r);
        return s;
    }

    const AbelianGroup& group() const { return group_; }

    bool contains(std::uint64_t rank) const {
        return (bits_[rank >> 6] >> (rank & 63)) & 1;
    }

    void insert(std::uint64_t rank) {
        if (rank >= group_.order()) throw std::out_of_range("element rank out of range");
        std::uint64_t& w = bits_[rank >> 6];
        std::uint64_t bit = std::uint64_t(1) << (rank & 63);
        if (!(w & bit)) ++count_;
        w |= bit;
    }

    void erase(std::uint64_t rank) {
        if (rank >= group_.order()) throw std::out_of_range("element rank out of range");
        std::uint64_t& w = bits_[rank >> 6];
        std::uint64_t bit = std::uint64_t(1) << (rank & 63);
        if (w & bit) --count_;
        w &= ~bit;
    }

    std::uint64_t size() const { return count_; }
    bool empty() const { return count_ == 0; }

    Rational density() const {
        return Rational(BigInt(count_), BigInt(group_.order()));
    }

    std::vector<std::uint64_t> ranks() const {
        std::vector<std::uint64_t> out;
        out.reserve(count_);
        for (std::size_t w = 0; w < bits_.size(); ++w) {
            std::uint64_t word = bits_[w];
            while (word) {
                unsigned b = std::countr_zero(word);
                out.push_back((std::uint64_t(w) << 6) | b);
                word &= word - 1;
            }
        }
        return out;
    }

    /// Canonical spec string: hex bitmask, lowest rank in bit 0, e.g. "0xE".
    std::string spec() const {
        static const char* digits = "0123456789ABCDEF";
        std::string hex;
        bool leading = true;
        for (std::size_t w = bits_.size(); w-- > 0;) {
            for (int nib = 15; nib >= 0; --nib) {
                unsigned v = (bits_[w] >> (4 * nib)) & 0xF;
                if (leading && v == 0) continue;
                leading = false;
                hex += digits[v];
            }
        }
        if (hex.empty()) hex = "0";
        return "0x" + hex;
    }

    bool operator==(const Subset& o) const {
        return group_ == o.group_ && bits_ == o.bits_;
    }

  private:
    AbelianGroup group_;
    std::vector<std::uint64_t> bits_;
    std::uint64_t count_ = 0;
};

/// Parses a subset spec: either an explicit rank list "1,2,3" or a hex
/// bitmask "0xE". The empty string is the empty subset.
inline Subset parse_subset_spec(const AbelianGroup& g, const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    Subset out(g);
    if (s.empty()) return out;
    if (s.size() > 2 && (s[0] == '0') && (s[1] == 'x' || s[1] == 'X')) {
        std::uint64_t bitpos = 0;
        for (std::size_t i = s.size(); i-- > 2;) {
            char c = s[i];
            unsigned v;
            if (c >= '0' && c <= '9') v = c - '0';
            else if (c >= 'a' && c <= 'f') v = 10 + (c - 'a');
            else if (c >= 'A' && c <= 'F') v = 10 + (c - 'A');
            else throw std::invalid_argument("bad hex subset spec: " + text);
            for (unsigned b = 0; b < 4; ++b)
                if (v & (1u << b)) out.insert(bitpos + b);
            bitpos += 4;
        }
        return out;
    }
    std::size_t pos = 0;
    while (pos <= s.size()) {
        auto comma = s.find(',', pos);
        std::string tok = s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        if (tok.empty()) throw std::invalid_argument("bad subset spec: " + text);
        std::uint64_t v = 0;
        auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size())
            throw std::invalid_argument("bad subset spec: " + text);
        out.insert(v);
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

inline void require_same_group(const Subset& f, const AbelianGroup& g, const char* what) {
    if (!(f.group() == g))
        throw std::invalid_argument(std::string(what) + ": subset belongs to a different group");
}

}  // namespace sumfree
