#pragma once

#include <algorithm>
#include <bit>
#include <charconv>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace reppart {

// Thrown when a query reaches outside the materialized window of a set.
class window_error : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

/**
 * Finite set of nonnegative integers in [0, bound), stored as packed bits.
 *
 * Every "infinite" set is materialized only up to its bound, so a query at or
 * past the bound throws instead of answering 0.
 */
class BoundedSet {
public:
    using word_type = std::uint64_t;
    static constexpr std::size_t word_bits = 64;

    BoundedSet() = default;

    explicit BoundedSet(std::size_t bound)
        : bound_(bound), words_((bound + word_bits - 1) / word_bits, 0) {}

    BoundedSet(std::size_t bound, std::initializer_list<std::size_t> elements)
        : BoundedSet(bound) {
        for (auto e : elements) insert(e);
    }

    BoundedSet(std::size_t bound, std::span<const std::size_t> elements)
        : BoundedSet(bound) {
        for (auto e : elements) insert(e);
    }

    // The interval [lo, hi) intersected with [0, bound).
    static BoundedSet interval(std::size_t bound, std::size_t lo, std::size_t hi) {
        BoundedSet s(bound);
        for (std::size_t e = lo; e < std::min(hi, bound); ++e) s.insert_unchecked(e);
        return s;
    }

    std::size_t bound() const noexcept { return bound_; }

    bool contains(std::size_t t) const {
        check_index(t);
        return test(t);
    }

    // Unchecked membership; callers guarantee t < bound().
    bool test(std::size_t t) const noexcept {
        return (words_[t / word_bits] >> (t % word_bits)) & 1u;
    }

    void insert(std::size_t e) {
        check_index(e);
        insert_unchecked(e);
    }

    void erase(std::size_t e) {
        check_index(e);
        words_[e / word_bits] &= ~(word_type{1} << (e % word_bits));
    }

    void flip(std::size_t e) {
        check_index(e);
        words_[e / word_bits] ^= word_type{1} << (e % word_bits);
    }

    std::size_t count() const noexcept {
        std::size_t c = 0;
        for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }

    bool empty() const noexcept {
        return std::all_of(words_.begin(), words_.end(), [](word_type w) { return w == 0; });
    }

    std::optional<std::size_t> min() const noexcept {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i]) return i * word_bits + static_cast<std::size_t>(std::countr_zero(words_[i]));
        return std::nullopt;
    }

    std::optional<std::size_t> max() const noexcept {
        for (std::size_t i = words_.size(); i-- > 0;)
            if (words_[i])
                return i * word_bits + (word_bits - 1 - static_cast<std::size_t>(std::countl_zero(words_[i])));
        return std::nullopt;
    }

    // Calls f(e) for every element in increasing order.
    template <typename F>
    void for_each(F&& f) const {
        for (std::size_t i = 0; i < words_.size(); ++i) {
            word_type w = words_[i];
            while (w) {
                f(i * word_bits + static_cast<std::size_t>(std::countr_zero(w)));
                w &= w - 1;
            }
        }
    }

    // Calls f(e) for every element e < limit in increasing order.
    template <typename F>
    void for_each_below(std::size_t limit, F&& f) const {
        limit = std::min(limit, bound_);
        const std::size_t full = limit / word_bits;
        for (std::size_t i = 0; i < full; ++i) {
            word_type w = words_[i];
            while (w) {
                f(i * word_bits + static_cast<std::size_t>(std::countr_zero(w)));
                w &= w - 1;
            }
        }
        if (const std::size_t rem = limit % word_bits; rem != 0) {
            word_type w = words_[full] & ((word_type{1} << rem) - 1);
            while (w) {
                f(full * word_bits + static_cast<std::size_t>(std::countr_zero(w)));
                w &= w - 1;
            }
        }
    }

    std::vector<std::size_t> elements() const {
        std::vector<std::size_t> out;
        out.reserve(count());
        for_each([&](std::size_t e) { out.push_back(e); });
        return out;
    }

    std::span<const word_type> words() const noexcept { return words_; }

    // Same elements under a different bound; elements >= new_bound are
    // dropped and their number is written to *dropped when given.
    BoundedSet with_bound(std::size_t new_bound, std::size_t* dropped = nullptr) const {
        BoundedSet out(new_bound);
        std::size_t lost = 0;
        for_each([&](std::size_t e) {
            if (e < new_bound)
                out.insert_unchecked(e);
            else
                ++lost;
        });
        if (dropped) *dropped = lost;
        return out;
    }

    BoundedSet& operator|=(const BoundedSet& o) { return combine(o, [](word_type a, word_type b) { return a | b; }); }
    BoundedSet& operator&=(const BoundedSet& o) { return combine(o, [](word_type a, word_type b) { return a & b; }); }
    BoundedSet& operator-=(const BoundedSet& o) { return combine(o, [](word_type a, word_type b) { return a & ~b; }); }

    friend BoundedSet operator|(BoundedSet a, const BoundedSet& b) { return a |= b; }
    friend BoundedSet operator&(BoundedSet a, const BoundedSet& b) { return a &= b; }
    friend BoundedSet operator-(BoundedSet a, const BoundedSet& b) { return a -= b; }

    // Complement within [0, bound).
    BoundedSet complement() const {
        BoundedSet out(bound_);
        for (std::size_t i = 0; i < words_.size(); ++i) out.words_[i] = ~words_[i];
        out.clear_tail();
        return out;
    }

    // Shifts every element up by `a` (or down, for shift_down) in place;
    // returns the number of elements pushed out of [0, bound).
    std::size_t shift_up(std::size_t a) {
        const std::size_t before = count();
        if (a >= bound_) {
            std::fill(words_.begin(), words_.end(), 0);
            return before;
        }
        const std::size_t ws = a / word_bits, bs = a % word_bits;
        for (std::size_t i = words_.size(); i-- > 0;) {
            word_type v = 0;
            if (i >= ws) {
                v = words_[i - ws] << bs;
                if (bs && i >= ws + 1) v |= words_[i - ws - 1] >> (word_bits - bs);
            }
            words_[i] = v;
        }
        clear_tail();
        return before - count();
    }

    friend bool operator==(const BoundedSet& a, const BoundedSet& b) {
        return a.bound_ == b.bound_ && a.words_ == b.words_;
    }

private:
    void check_index(std::size_t t) const {
        if (t >= bound_)
            throw window_error("element " + std::to_string(t) + " outside window [0, " + std::to_string(bound_) + ")");
    }

    void insert_unchecked(std::size_t e) noexcept { words_[e / word_bits] |= word_type{1} << (e % word_bits); }

    void clear_tail() noexcept {
        if (const std::size_t rem = bound_ % word_bits; rem != 0 && !words_.empty())
            words_.back() &= (word_type{1} << rem) - 1;
    }

    template <typename Op>
    BoundedSet& combine(const BoundedSet& o, Op op) {
        if (o.bound_ != bound_)
            throw std::invalid_argument("set algebra on sets with different bounds (" + std::to_string(bound_) +
                                        " vs " + std::to_string(o.bound_) + ")");
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] = op(words_[i], o.words_[i]);
        return *this;
    }

    std::size_t bound_ = 0;
    std::vector<word_type> words_;
};

// The excluded progression {r + m k : k >= 0}.
class ProgressionSpec {
public:
    ProgressionSpec(std::size_t r, std::size_t m) : r_(r), m_(m) {
        if (m < 2) throw std::invalid_argument("progression modulus must be >= 2, got " + std::to_string(m));
    }

    std::size_t r() const noexcept { return r_; }
    std::size_t m() const noexcept { return m_; }

    bool contains(std::size_t x) const noexcept { return x >= r_ && (x - r_) % m_ == 0; }

    friend bool operator==(const ProgressionSpec&, const ProgressionSpec&) = default;

private:
    std::size_t r_;
    std::size_t m_;
};

inline int chi(const BoundedSet& s, std::size_t t) { return s.contains(t) ? 1 : 0; }

// Number of ones in the binary representation of n.
constexpr unsigned digit_sum_2(std::uint64_t n) noexcept { return static_cast<unsigned>(std::popcount(n)); }

struct ShiftResult {
    BoundedSet set;
    std::size_t dropped = 0;
};

// a + S, same bound; elements pushed past the bound are counted in `dropped`.
inline ShiftResult shift(const BoundedSet& s, std::size_t a) {
    ShiftResult out{s, 0};
    out.dropped = out.set.shift_up(a);
    return out;
}

// S ∩ [0, x], inclusive of x; the bound is kept.
inline BoundedSet truncate(const BoundedSet& s, std::size_t x) {
    if (x >= s.bound())
        throw window_error("truncate at " + std::to_string(x) + " outside window [0, " + std::to_string(s.bound()) + ")");
    BoundedSet out(s.bound());
    s.for_each_below(x + 1, [&](std::size_t e) { out.insert(e); });
    return out;
}

inline BoundedSet progression_set(const ProgressionSpec& p, std::size_t bound) {
    BoundedSet out(bound);
    for (std::size_t x = p.r(); x < bound; x += p.m()) out.insert(x);
    return out;
}

// Set literal: a header line "bound=<N>" followed by one line of sorted
// comma-separated elements (empty for the empty set).
inline std::string format_set_literal(const BoundedSet& s) {
    std::string out = "bound=" + std::to_string(s.bound()) + "\n";
    bool first = true;
    s.for_each([&](std::size_t e) {
        if (!first) out += ',';
        out += std::to_string(e);
        first = false;
    });
    out += '\n';
    return out;
}

namespace detail {

inline std::size_t parse_size(std::string_view text, std::string_view what) {
    std::size_t value = 0;
    const auto* first = text.data();
    const auto* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (text.empty() || ec != std::errc{} || ptr != last)
        throw std::invalid_argument("malformed " + std::string(what) + ": '" + std::string(text) + "'");
    return value;
}

}  // namespace detail

inline BoundedSet parse_set_literal(std::string_view text) {
    const auto nl = text.find('\n');
    std::string_view header = text.substr(0, nl);
    std::string_view body = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (!body.empty() && body.back() == '\n') body.remove_suffix(1);
    if (body.find('\n') != std::string_view::npos) throw std::invalid_argument("set literal has more than two lines");

    constexpr std::string_view prefix = "bound=";
    if (!header.starts_with(prefix)) throw std::invalid_argument("set literal must start with 'bound=<N>'");
    BoundedSet out(detail::parse_size(header.substr(prefix.size()), "bound"));

    std::optional<std::size_t> prev;
    while (!body.empty()) {
        const auto comma = body.find(',');
        const auto token = body.substr(0, comma);
        const auto e = detail::parse_size(token, "element");
        if (prev && e <= *prev) throw std::invalid_argument("set literal elements must be strictly increasing");
        if (e >= out.bound()) throw std::invalid_argument("set literal element " + std::to_string(e) + " >= bound");
        out.insert(e);
        prev = e;
        if (comma == std::string_view::npos) break;
        body.remove_prefix(comma + 1);
        if (body.empty()) throw std::invalid_argument("set literal has a trailing comma");
    }
    return out;
}

}  // namespace reppart
