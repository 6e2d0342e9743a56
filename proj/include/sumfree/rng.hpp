#pragma once

#include "sumfree/subset.hpp"

#include <cstdint>
#include <string_view>

namespace sumfree {

/// The report generator pins its random stream to this name; a config file
/// naming a different algorithm is rejected rather than silently reseeded.
inline constexpr std::string_view kRngAlgorithm = "splitmix64-v1";

/// splitmix64. Small state, full 64-bit output, and cheap counter-based
/// splitting: all that reproducible sweeps need.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1) with 53 random bits.
    double next_unit() { return double(next() >> 11) * 0x1.0p-53; }

  private:
    std::uint64_t state_;
};

namespace detail {

inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

}  // namespace detail

/// Stream for a (seed, id) pair. Pure function of its arguments, so any
/// scheduling of work items sees identical streams.
inline SplitMix64 derive_stream(std::uint64_t seed, std::uint64_t stream_id) {
    return SplitMix64(detail::mix64(seed + 0x9E3779B97F4A7C15ull * (stream_id + 1)));
}

/// Subset drawn by independent inclusion with probability p.
inline Subset sample_subset(const AbelianGroup& g, SplitMix64& rng, double p) {
    Subset f(g);
    for (std::uint64_t e = 0; e < g.order(); ++e)
        if (rng.next_unit() < p) f.insert(e);
    return f;
}

/// Inclusion probability for the s-th sample of a group: cycles through
/// 0.1, 0.3, 0.5, mu(G) so sweeps cover both the sparse regime, where the
/// bounds bind, and dense ones, where they are slack.
inline double sample_probability(const AbelianGroup& g, std::uint64_t sample_index) {
    switch (sample_index % 4) {
        case 0: return 0.1;
        case 1: return 0.3;
        case 2: return 0.5;
        default: return g.trivial() ? 0.5 : to_double(mu(g));
    }
}

}  // namespace sumfree
