#pragma once

#include "sumfree/character.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

namespace sumfree {

/// Ordered additive triples inside a subset: pairs (x, y) in F x F with
/// x + y also in F. The density normalizes by n^2, the number of candidate
/// pairs with both summands free over the whole group.
struct SchurStats {
    std::uint64_t triples = 0;
    Rational density;  // triples / n^2
};

inline SchurStats schur_count_bruteforce(const Subset& f) {
    const AbelianGroup& g = f.group();
    auto members = f.ranks();
    std::uint64_t t = 0;
    for (std::uint64_t x : members)
        for (std::uint64_t y : members)
            if (f.contains(g.add(x, y))) ++t;
    Rational n2 = Rational(g.order()) * g.order();
    return {t, Rational(t) / n2};
}

struct FourierCountDiagnostics {
    double raw = 0;       // n^-1 * sum over characters of |Fhat|^2 * Fhat, real part
    double imag = 0;      // same sum, imaginary part; zero up to roundoff
    double residual = 0;  // |raw - rounded|
};

/// Triple count through the transform: n * T equals the sum over all
/// characters of |Fhat(c)|^2 * conj(Fhat(c)). The sum is real because the
/// terms for c and its inverse are conjugate. Faults if the float sum
/// strays from an integer by more than 1e-3.
inline SchurStats schur_count_fourier(const Subset& f, FourierCountDiagnostics* diag = nullptr) {
    const AbelianGroup& g = f.group();
    const std::uint64_t n = g.order();
    const std::uint64_t m = g.exponent();
    detail::TrigTable trig(m);
    auto members = f.ranks();
    double sum_re = 0, sum_im = 0;
    std::vector<std::uint32_t> bucket(m);
    for (std::uint64_t cr = 0; cr < n; ++cr) {
        Character c(g, cr);
        std::fill(bucket.begin(), bucket.end(), 0u);
        for (std::uint64_t r : members) ++bucket[c.phase_numerator(r)];
        double re = 0, im = 0;
        for (std::uint64_t t = 0; t < m; ++t) {
            if (!bucket[t]) continue;
            re += double(bucket[t]) * trig.cos_v[t];
            im += double(bucket[t]) * trig.sin_v[t];
        }
        double norm2 = re * re + im * im;
        sum_re += norm2 * re;
        sum_im -= norm2 * im;
    }
    double raw = sum_re / double(n);
    double rounded = std::round(raw);
    if (diag) {
        diag->raw = raw;
        diag->imag = sum_im / double(n);
        diag->residual = std::abs(raw - rounded);
    }
    if (std::abs(raw - rounded) > 1e-3 || rounded < 0)
        throw consistency_error("fourier triple count is not near an integer");
    auto t = static_cast<std::uint64_t>(rounded);
    Rational n2 = Rational(n) * n;
    return {t, Rational(t) / n2};
}

}  // namespace sumfree
