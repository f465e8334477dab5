#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "intset.hpp"

namespace reppart {

// R1 counts ordered pairs s + s' = n, R2 pairs with s < s', R3 pairs with s <= s'.
enum class RepVariant { r1, r2, r3 };

struct RepProfile {
    RepVariant variant = RepVariant::r2;
    std::size_t source_bound = 0;
    std::vector<std::uint64_t> values;  // indexed by n in [0, N]
};

namespace detail {

inline void require_window(const BoundedSet& s, std::size_t n, const char* what) {
    if (n >= s.bound())
        throw window_error(std::string(what) + ": n=" + std::to_string(n) + " needs the set materialized past " +
                           std::to_string(s.bound()));
}

// Pairs a < b with a + b = n.
inline std::uint64_t strict_pairs(const BoundedSet& s, std::size_t n) {
    std::uint64_t c = 0;
    for (std::size_t a = 0; 2 * a < n; ++a)
        if (s.test(a) && s.test(n - a)) ++c;
    return c;
}

inline std::uint64_t diagonal(const BoundedSet& s, std::size_t n) { return n % 2 == 0 && s.test(n / 2) ? 1 : 0; }

}  // namespace detail

inline std::uint64_t r2(const BoundedSet& s, std::size_t n) {
    detail::require_window(s, n, "r2");
    return detail::strict_pairs(s, n);
}

inline std::uint64_t r3(const BoundedSet& s, std::size_t n) {
    detail::require_window(s, n, "r3");
    return detail::strict_pairs(s, n) + detail::diagonal(s, n);
}

inline std::uint64_t r1(const BoundedSet& s, std::size_t n) {
    detail::require_window(s, n, "r1");
    return 2 * detail::strict_pairs(s, n) + detail::diagonal(s, n);
}

/**
 * Representation profile for every n in [0, N] by word-parallel
 * self-convolution.
 *
 * With R the bit-reversal of S over [0, N] (R[j] = S[N - j]), the ordered
 * count at n is popcount(S & (R >> (N - n))): O(N^2 / 64) overall. The
 * diagonal term is then removed or halved per variant.
 */
inline RepProfile rep_profile(const BoundedSet& s, std::size_t N, RepVariant variant = RepVariant::r2) {
    detail::require_window(s, N, "rep_profile");
    using word = BoundedSet::word_type;
    constexpr std::size_t W = BoundedSet::word_bits;

    const std::size_t len = N + 1;
    const std::size_t nwords = (len + W - 1) / W;
    const auto src = s.words();

    // Restrict S to [0, N] and build its reversal; one spare zero word keeps
    // the shifted reads in range.
    std::vector<word> fwd(nwords + 1, 0), rev(nwords + 1, 0);
    std::copy_n(src.begin(), nwords, fwd.begin());
    if (len % W) fwd[nwords - 1] &= (word{1} << (len % W)) - 1;
    for (std::size_t i = 0; i < nwords; ++i) {
        word w = fwd[i];
        while (w) {
            const std::size_t e = i * W + static_cast<std::size_t>(std::countr_zero(w));
            const std::size_t j = N - e;
            rev[j / W] |= word{1} << (j % W);
            w &= w - 1;
        }
    }

    RepProfile out{variant, s.bound(), std::vector<std::uint64_t>(len, 0)};
    for (std::size_t n = 0; n <= N; ++n) {
        const std::size_t k = N - n;  // read rev shifted right by k
        const std::size_t ws = k / W, bs = k % W;
        const std::size_t last = n / W;  // a <= n
        std::uint64_t ordered = 0;
        for (std::size_t i = 0; i <= last && i + ws < nwords; ++i) {
            word shifted = rev[i + ws] >> bs;
            if (bs) shifted |= rev[i + ws + 1] << (W - bs);
            ordered += static_cast<std::uint64_t>(std::popcount(fwd[i] & shifted));
        }
        const std::uint64_t diag = detail::diagonal(s, n);
        switch (variant) {
            case RepVariant::r1: out.values[n] = ordered; break;
            case RepVariant::r2: out.values[n] = (ordered - diag) / 2; break;
            case RepVariant::r3: out.values[n] = (ordered + diag) / 2; break;
        }
    }
    return out;
}

inline RepProfile r2_profile(const BoundedSet& s, std::size_t N) { return rep_profile(s, N, RepVariant::r2); }

// Ordered pairs (a, b), a in S, b in W, a + b = n.
inline std::uint64_t r_cross(const BoundedSet& s, const BoundedSet& w, std::size_t n) {
    detail::require_window(s, n, "r_cross");
    detail::require_window(w, n, "r_cross");
    std::uint64_t c = 0;
    s.for_each_below(n + 1, [&](std::size_t a) { c += w.test(n - a) ? 1 : 0; });
    return c;
}

// r2 of S(x) = S ∩ [0, x] at N. Any x >= N leaves the count unchanged.
inline std::uint64_t r2_prefix(const BoundedSet& s, std::size_t x, std::size_t N) {
    detail::require_window(s, N, "r2_prefix");
    std::uint64_t c = 0;
    for (std::size_t a = 0; 2 * a < N; ++a) {
        const std::size_t b = N - a;
        if (b <= x && s.test(a) && s.test(b)) ++c;
    }
    return c;
}

}  // namespace reppart
