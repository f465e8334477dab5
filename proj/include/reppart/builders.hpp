#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "intset.hpp"

namespace reppart {

// Raised when a construction would contradict the disjointness it is meant
// to produce (for example a value reachable with both parities).
class construction_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class WeightKind { s1_family, s2_family, xy_family, explicit_list };

/**
 * Weight sequence h_1 < h_2 < ... whose even/odd-cardinality subset sums
 * define the two halves of a partition.
 *
 *   s1_family(l): 1, 2, ..., 2^(l-1), then (2^l + 1) * 2^j for j >= 0
 *   s2_family(l): 1, 2, ..., 2^(l-2), 2^(l-1) + 1, then (2^l + 1) * 2^j
 *                 (l = 0 falls back to s1_family(0))
 *   xy_family:    2, 3, 4, 8, 16, ...
 */
class WeightSequence {
public:
    static constexpr unsigned max_l = 60;

    static WeightSequence s1_family(unsigned l) { return WeightSequence(WeightKind::s1_family, checked(l), {}); }
    static WeightSequence s2_family(unsigned l) { return WeightSequence(WeightKind::s2_family, checked(l), {}); }
    static WeightSequence xy_family() { return WeightSequence(WeightKind::xy_family, 0, {}); }

    static WeightSequence explicit_list(std::vector<std::size_t> weights) {
        for (std::size_t i = 0; i < weights.size(); ++i) {
            if (weights[i] == 0) throw std::invalid_argument("weights must be positive");
            if (i > 0 && weights[i] <= weights[i - 1]) throw std::invalid_argument("weights must be strictly increasing");
        }
        return WeightSequence(WeightKind::explicit_list, 0, std::move(weights));
    }

    WeightKind kind() const noexcept { return kind_; }
    unsigned l() const noexcept { return l_; }

    // Every weight strictly below `bound`, in increasing order.
    std::vector<std::size_t> weights_below(std::size_t bound) const {
        std::vector<std::size_t> out;
        auto push = [&](std::size_t w) {
            if (w >= bound) return false;
            out.push_back(w);
            return true;
        };
        auto geometric_tail = [&](std::size_t start) {
            for (std::size_t w = start; push(w); w *= 2)
                if (w > bound / 2) break;
        };
        switch (kind_) {
            case WeightKind::s1_family:
                for (unsigned i = 0; i < l_; ++i)
                    if (!push(std::size_t{1} << i)) return out;
                geometric_tail((std::size_t{1} << l_) + 1);
                break;
            case WeightKind::s2_family:
                if (l_ == 0) return s1_family(0).weights_below(bound);
                for (unsigned i = 0; i + 1 < l_; ++i)
                    if (!push(std::size_t{1} << i)) return out;
                if (!push((std::size_t{1} << (l_ - 1)) + 1)) return out;
                geometric_tail((std::size_t{1} << l_) + 1);
                break;
            case WeightKind::xy_family:
                if (!push(2) || !push(3)) return out;
                geometric_tail(4);
                break;
            case WeightKind::explicit_list:
                for (auto w : explicit_)
                    if (!push(w)) break;
                break;
        }
        return out;
    }

private:
    WeightSequence(WeightKind kind, unsigned l, std::vector<std::size_t> weights)
        : kind_(kind), l_(l), explicit_(std::move(weights)) {}

    static unsigned checked(unsigned l) {
        if (l > max_l) throw std::invalid_argument("family parameter l too large: " + std::to_string(l));
        return l;
    }

    WeightKind kind_;
    unsigned l_;
    std::vector<std::size_t> explicit_;
};

struct ParityBuildReport {
    BoundedSet even_set;   // sums of an even number of weights
    BoundedSet odd_set;    // sums of an odd number of weights
    BoundedSet ambiguous;  // reachable with both parities
};

// Parity-tagged subset-sum DP over all weights below `bound`.
inline ParityBuildReport build_parity_sets(const WeightSequence& w, std::size_t bound) {
    BoundedSet even(bound), odd(bound);
    if (bound > 0) even.insert(0);
    for (auto h : w.weights_below(bound)) {
        auto even_shift = shift(even, h).set;
        auto odd_shift = shift(odd, h).set;
        even |= odd_shift;
        odd |= even_shift;
    }
    auto ambiguous = even & odd;
    return {std::move(even), std::move(odd), std::move(ambiguous)};
}

struct EvilOdious {
    BoundedSet evil;    // U: even binary digit sum
    BoundedSet odious;  // V: odd binary digit sum
};

inline EvilOdious build_evil_odious(std::size_t bound) {
    EvilOdious out{BoundedSet(bound), BoundedSet(bound)};
    for (std::size_t n = 0; n < bound; ++n) (digit_sum_2(n) % 2 == 0 ? out.evil : out.odious).insert(n);
    return out;
}

enum class FamilyKind { s1t1, s2t2, s1t1_shifted };

struct Family {
    FamilyKind kind;
    unsigned l;

    friend bool operator==(const Family&, const Family&) = default;
};

inline std::string family_tag(FamilyKind k) {
    switch (k) {
        case FamilyKind::s1t1: return "s1t1";
        case FamilyKind::s2t2: return "s2t2";
        case FamilyKind::s1t1_shifted: return "s1t1+1";
    }
    return "?";
}

inline std::string family_name(const Family& f) { return family_tag(f.kind) + ":" + std::to_string(f.l); }

inline FamilyKind parse_family_tag(std::string_view tag) {
    if (tag == "s1t1") return FamilyKind::s1t1;
    if (tag == "s2t2") return FamilyKind::s2t2;
    if (tag == "s1t1+1") return FamilyKind::s1t1_shifted;
    throw std::invalid_argument("unknown family tag '" + std::string(tag) + "'");
}

// Offset of the S2 family's excluded progression: 1 for l = 0, else 2^(l-1).
constexpr std::size_t s2_offset(unsigned l) noexcept { return l == 0 ? 1 : std::size_t{1} << (l - 1); }

// The progression left uncovered by the family's two sets.
inline ProgressionSpec predicted_progression(const Family& f) {
    if (f.l > WeightSequence::max_l) throw std::invalid_argument("family parameter l too large");
    const std::size_t m = (std::size_t{1} << f.l) + 1;
    switch (f.kind) {
        case FamilyKind::s1t1: return {std::size_t{1} << f.l, m};
        case FamilyKind::s2t2: return {s2_offset(f.l), m};
        case FamilyKind::s1t1_shifted: return {0, m};
    }
    throw std::logic_error("unhandled family kind");
}

struct FamilyBuild {
    Family family;
    BoundedSet A;
    BoundedSet B;
    BoundedSet T;
    ProgressionSpec progression;
};

namespace detail {

inline ParityBuildReport unambiguous(const WeightSequence& w, std::size_t bound, const char* what) {
    auto report = build_parity_sets(w, bound);
    if (!report.ambiguous.empty())
        throw construction_error(std::string(what) + ": value " + std::to_string(*report.ambiguous.min()) +
                                 " is reachable with both parities");
    return report;
}

}  // namespace detail

inline FamilyBuild build_family(const Family& f, std::size_t bound) {
    const auto weights = f.kind == FamilyKind::s2t2 ? WeightSequence::s2_family(f.l) : WeightSequence::s1_family(f.l);
    auto report = detail::unambiguous(weights, bound, "family build");
    auto progression = predicted_progression(f);
    BoundedSet A = std::move(report.even_set), B = std::move(report.odd_set);
    if (f.kind == FamilyKind::s1t1_shifted) {
        A = shift(A, 1).set;
        B = shift(B, 1).set;
    }
    auto T = progression_set(progression, bound);
    return {f, std::move(A), std::move(B), std::move(T), progression};
}

struct EFPair {
    BoundedSet E;
    BoundedSet F;
};

/**
 * The finite blocks
 *   E_u = U_u ∪ (2^u+1+V_u) ∪ (2^(u+1)+1+V_u)
 *   F_u = V_u ∪ (2^u+1+U_u) ∪ (2^(u+1)+1+U_u) ∪ {2^(u+1)+1+2^u}
 * over the window [0, 2^(u+1)+2^u+2).
 */
inline EFPair build_EF(unsigned u) {
    if (u > 40) throw std::invalid_argument("ef block parameter too large");
    const std::size_t p = std::size_t{1} << u;
    const std::size_t bound = 2 * p + p + 2;
    auto [U, V] = build_evil_odious(p);
    auto place = [bound](const BoundedSet& s, std::size_t offset) {
        BoundedSet out(bound);
        s.for_each([&](std::size_t e) { out.insert(e + offset); });
        return out;
    };
    EFPair out{place(U, 0) | place(V, p + 1) | place(V, 2 * p + 1),
               place(V, 0) | place(U, p + 1) | place(U, 2 * p + 1)};
    out.F.insert(2 * p + 1 + p);
    return out;
}

struct XYPair {
    BoundedSet X;
    BoundedSet Y;
};

inline XYPair build_XY(std::size_t bound) {
    auto report = detail::unambiguous(WeightSequence::xy_family(), bound, "xy build");
    return {std::move(report.even_set), std::move(report.odd_set)};
}

}  // namespace reppart
