#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "builders.hpp"
#include "intset.hpp"
#include "repfn.hpp"
#include "solver.hpp"

namespace reppart {

// An instance does not satisfy the hypotheses of the identity it was
// submitted to. Never a counterexample.
class hypothesis_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct IdentitySides {
    std::int64_t lhs = 0;
    std::int64_t rhs = 0;
    bool holds() const noexcept { return lhs == rhs; }
};

/**
 * Inputs of the four-term identity
 *
 *   R_{A(n)}(N) + R_{D(n)}(N) - R_{B(n)}(N) - R_{C(n)}(N)
 *     = |D'| - R_{T,D'}(N) + R_{D, T(L,n)∩D}(N)
 *     - |C'| + R_{T,C'}(N) - R_{C, T(L,n)∩C}(N) - [N = 2L]
 *
 * with D' = D(n) \ (B(n) ∪ T(L,n)), C' = C(n) \ (A(n) ∪ T(L,n)) and
 * T(L,n) = T ∩ [L, n], valid for L <= n <= N <= K.
 */
struct FourTermInstance {
    BoundedSet A, B, C, D, T;
    std::size_t L = 1, K = 1, n = 1, N = 1;
};

namespace detail {

// S ∩ [lo, hi] placed in a window of the given bound.
inline BoundedSet slice(const BoundedSet& s, std::size_t lo, std::size_t hi, std::size_t bound) {
    BoundedSet out(bound);
    s.for_each_below(std::min(hi + 1, bound), [&](std::size_t e) {
        if (e >= lo) out.insert(e);
    });
    return out;
}

inline std::int64_t as_signed(std::uint64_t v) { return static_cast<std::int64_t>(v); }

}  // namespace detail

inline void validate_hypotheses(const FourTermInstance& in) {
    auto fail = [](const std::string& why) { throw hypothesis_error("four-term instance: " + why); };
    const auto [L, K, n, N] = std::tuple{in.L, in.K, in.n, in.N};
    if (L < 1 || !(L <= K && K <= 2 * L)) fail("need 1 <= L <= K <= 2L");
    if (!(L <= n && n <= N && N <= K)) fail("need L <= n <= N <= K");
    for (const auto* s : {&in.A, &in.B, &in.C, &in.D, &in.T})
        if (s->bound() <= K) fail("every set must be materialized past K");

    if (!in.T.test(L)) fail("L must lie in T");
    if (in.C.test(L)) fail("L must not lie in C");
    if (!in.A.test(0) || !in.C.test(0)) fail("0 must lie in A and C");
    if (in.B.test(0) || in.D.test(0)) fail("0 must lie outside B and D");

    const std::size_t w = std::min({in.A.bound(), in.B.bound(), in.T.bound()});
    for (std::size_t x = 0; x < w; ++x) {
        const int covered = int(in.A.test(x)) + int(in.B.test(x)) + int(in.T.test(x));
        if (covered != 1) fail("A, B, T must partition the window at " + std::to_string(x));
    }
    for (std::size_t x = 0; x <= K; ++x) {
        const bool low_t = x < L && in.T.test(x);
        const int covered = int(in.C.test(x)) + int(in.D.test(x)) + int(low_t);
        if (covered != 1) fail("C(K), D(K), T(L-1) must partition [0, K] at " + std::to_string(x));
    }
    for (std::size_t x = 0; x < L; ++x) {
        if (in.A.test(x) != in.C.test(x)) fail("A(L-1) must equal C(L-1) at " + std::to_string(x));
        if (in.B.test(x) != in.D.test(x)) fail("B(L-1) must equal D(L-1) at " + std::to_string(x));
    }
}

// Both sides of the identity, without checking hypotheses.
inline IdentitySides four_term_sides(const FourTermInstance& in) {
    using detail::as_signed;
    using detail::slice;
    const std::size_t W = in.N + 1;
    const auto An = slice(in.A, 0, in.n, W), Bn = slice(in.B, 0, in.n, W);
    const auto Cn = slice(in.C, 0, in.n, W), Dn = slice(in.D, 0, in.n, W);
    const auto C = slice(in.C, 0, in.N, W), D = slice(in.D, 0, in.N, W);
    const auto T = slice(in.T, 0, in.N, W);
    const auto TLn = slice(in.T, in.L, in.n, W);

    const auto Dp = Dn - (Bn | TLn);
    const auto Cp = Cn - (An | TLn);
    const std::size_t N = in.N;

    IdentitySides out;
    out.lhs = as_signed(r2(An, N)) + as_signed(r2(Dn, N)) - as_signed(r2(Bn, N)) - as_signed(r2(Cn, N));
    out.rhs = as_signed(Dp.count()) - as_signed(r_cross(T, Dp, N)) + as_signed(r_cross(D, TLn & D, N)) -
              as_signed(Cp.count()) + as_signed(r_cross(T, Cp, N)) - as_signed(r_cross(C, TLn & C, N)) -
              (N == 2 * in.L ? 1 : 0);
    return out;
}

inline bool check_four_term(const FourTermInstance& in) {
    validate_hypotheses(in);
    return four_term_sides(in).holds();
}

/**
 * For a partition A ∪ B = N \ T with equal representation functions, 0 in A
 * and L = min T >= 1, every 1 <= n < 2L satisfies
 *
 *   sum_{t in T(n)} chi_U(n-t+1) = sum_{t in T(n)} chi_U(n-t) + chi_A(n+1) - chi_U(n+1) - [n = 2L-1]
 */
inline IdentitySides u_sum_sides(const BoundedSet& A, const BoundedSet& T, std::size_t n) {
    const auto L = T.min();
    if (!L) throw hypothesis_error("u-sum: T is empty in the window");
    auto U = [](std::size_t x) -> std::int64_t { return digit_sum_2(x) % 2 == 0 ? 1 : 0; };
    IdentitySides out;
    T.for_each_below(n + 1, [&](std::size_t t) {
        out.lhs += U(n - t + 1);
        out.rhs += U(n - t);
    });
    out.rhs += chi(A, n + 1) - U(n + 1) - (n + 1 == 2 * *L ? 1 : 0);
    return out;
}

struct USumResult {
    std::size_t min_t = 0;
    bool min_t_odious = false;  // min T in V (equivalently not in U)
    std::vector<std::pair<std::size_t, IdentitySides>> identities;  // one per n in [1, 2 min T)

    bool holds() const {
        return min_t_odious && std::all_of(identities.begin(), identities.end(),
                                           [](const auto& e) { return e.second.holds(); });
    }
};

inline USumResult u_sum_details(const ProgressionSpec& p, std::size_t bound) {
    if (p.r() == 0) throw hypothesis_error("u-sum: needs 0 outside T (r >= 1)");
    bound = std::max(bound, 2 * p.r() + 1);
    auto out = forced_extend(p, bound);
    if (out.status != ExtensionStatus::completed)
        throw hypothesis_error("u-sum: no partition exists for r=" + std::to_string(p.r()) +
                               ", m=" + std::to_string(p.m()));
    USumResult res;
    res.min_t = p.r();
    res.min_t_odious = digit_sum_2(res.min_t) % 2 == 1;
    for (std::size_t n = 1; n < 2 * res.min_t; ++n) res.identities.emplace_back(n, u_sum_sides(out.A, out.T, n));
    return res;
}

inline bool check_u_sum(const ProgressionSpec& p, std::size_t bound) { return u_sum_details(p, bound).holds(); }

// First n in [1, N] where the R2 profiles differ.
inline std::optional<std::size_t> first_profile_mismatch(const BoundedSet& a, const BoundedSet& b, std::size_t N) {
    if (N == 0) return std::nullopt;
    const auto pa = r2_profile(a, N), pb = r2_profile(b, N);
    for (std::size_t n = 1; n <= N; ++n)
        if (pa.values[n] != pb.values[n]) return n;
    return std::nullopt;
}

// Membership predicted for a cell by the three families.
inline std::optional<Family> predicted_family(std::size_t r, std::size_t m) {
    for (unsigned l = 0; l <= WeightSequence::max_l && (std::size_t{1} << l) + 1 <= m; ++l) {
        if ((std::size_t{1} << l) + 1 != m) continue;
        for (auto kind : {FamilyKind::s1t1, FamilyKind::s2t2, FamilyKind::s1t1_shifted})
            if (predicted_progression({kind, l}).r() == r) return Family{kind, l};
    }
    return std::nullopt;
}

enum class BoundProfile { quick, full };

inline const char* profile_name(BoundProfile p) { return p == BoundProfile::quick ? "quick" : "full"; }

struct ProfileParams {
    unsigned evil_odious_l_max;
    unsigned family_l_max;
    std::size_t family_bound;
    unsigned ef_u_max;
    std::size_t xy_bound;
    unsigned four_term_l_max;
    std::size_t grid_m_max;
    std::size_t grid_bound;
};

inline ProfileParams profile_params(BoundProfile p) {
    if (p == BoundProfile::quick) return {8, 4, std::size_t{1} << 12, 6, std::size_t{1} << 12, 4, 17, 1024};
    return {10, 6, std::size_t{1} << 14, 8, std::size_t{1} << 14, 6, 33, 2048};
}

struct LemmaFailure {
    nlohmann::json inputs;
    nlohmann::json lhs;
    nlohmann::json rhs;
};

struct LemmaResult {
    std::string id;
    std::size_t instances = 0;
    std::size_t passed = 0;
    std::size_t rejected = 0;  // instances whose hypotheses did not hold
    std::optional<LemmaFailure> first_failure;

    bool ok() const noexcept { return passed == instances; }

    void record(bool holds, const nlohmann::json& inputs, const nlohmann::json& lhs, const nlohmann::json& rhs) {
        ++instances;
        if (holds) ++passed;
        else if (!first_failure) first_failure = LemmaFailure{inputs, lhs, rhs};
    }
};

struct SuiteReport {
    BoundProfile profile = BoundProfile::quick;
    std::vector<LemmaResult> lemmas;

    bool all_passed() const {
        return std::all_of(lemmas.begin(), lemmas.end(), [](const auto& l) { return l.ok(); });
    }
};

inline const std::vector<std::string>& lemma_ids() {
    static const std::vector<std::string> ids = {
        "complements",    "weighted-parity", "evil-odious", "ef-blocks",      "xy-split",   "four-term",
        "u-sum",          "unit-residue",    "power-residue", "residue-digits", "grid",
    };
    return ids;
}

namespace detail {

inline nlohmann::json set_json(const BoundedSet& s) { return {{"bound", s.bound()}, {"elements", s.elements()}}; }

inline std::vector<Family> all_families(unsigned l_max) {
    std::vector<Family> out;
    for (unsigned l = 0; l <= l_max; ++l)
        for (auto kind : {FamilyKind::s1t1, FamilyKind::s2t2, FamilyKind::s1t1_shifted}) out.push_back({kind, l});
    return out;
}

class SuiteRunner {
public:
    explicit SuiteRunner(BoundProfile profile) : profile_(profile), params_(profile_params(profile)) {}

    LemmaResult run(const std::string& id) {
        LemmaResult res{id, 0, 0, 0, std::nullopt};
        if (id == "complements") complements(res);
        else if (id == "weighted-parity") weighted_parity(res);
        else if (id == "evil-odious") evil_odious(res);
        else if (id == "ef-blocks") ef_blocks(res);
        else if (id == "xy-split") xy_split(res);
        else if (id == "four-term") four_term(res);
        else if (id == "u-sum") u_sum(res);
        else if (id == "unit-residue") unit_residue(res);
        else if (id == "power-residue") power_residue(res);
        else if (id == "residue-digits") residue_digits(res);
        else if (id == "grid") grid(res);
        else throw std::invalid_argument("unknown lemma id '" + id + "'");
        return res;
    }

private:
    const std::vector<ClassificationRecord>& grid_records() {
        if (!grid_) grid_ = classify_grid({2, params_.grid_m_max, 2, params_.grid_bound, 0});
        return *grid_;
    }

    void complements(LemmaResult& res) {
        const std::size_t bound = params_.family_bound;
        for (const auto& f : all_families(params_.family_l_max)) {
            nlohmann::json inputs = {{"family", family_name(f)}, {"bound", bound}};
            try {
                auto b = build_family(f, bound);
                const auto overlap = (b.A & b.B) | (b.A & b.T) | (b.B & b.T);
                const auto missing = (b.A | b.B | b.T).complement();
                const bool ok = overlap.empty() && missing.empty() && b.T == progression_set(b.progression, bound);
                res.record(ok, inputs, {{"overlap", overlap.count()}, {"uncovered", missing.count()}},
                           {{"overlap", 0}, {"uncovered", 0}});
            } catch (const construction_error& e) {
                res.record(false, inputs, e.what(), "unambiguous parity build");
            }
        }
    }

    void weighted_parity(LemmaResult& res) {
        const std::size_t bound = params_.family_bound;
        for (const auto& f : all_families(params_.family_l_max)) {
            auto b = build_family(f, bound);
            const std::size_t anchor = f.kind == FamilyKind::s1t1_shifted ? 1 : 0;
            const std::size_t N = bound - anchor - 1;
            const auto mismatch = first_profile_mismatch(b.A, b.B, N);
            nlohmann::json inputs = {{"family", family_name(f)}, {"bound", bound}, {"n_max", N}};
            if (mismatch) inputs["n"] = *mismatch;
            res.record(!mismatch, inputs, mismatch ? r2(b.A, *mismatch) : 0, mismatch ? r2(b.B, *mismatch) : 0);
        }
    }

    void evil_odious(LemmaResult& res) {
        for (unsigned l = 0; l <= params_.evil_odious_l_max; ++l) {
            const std::size_t N = (std::size_t{2} << l) - 2;
            auto [U, V] = build_evil_odious(std::size_t{1} << l);
            const auto Ul = U.with_bound(N + 1), Vl = V.with_bound(N + 1);
            const auto mismatch = first_profile_mismatch(Ul, Vl, N);
            nlohmann::json inputs = {{"l", l}, {"n_max", N}};
            if (mismatch) inputs["n"] = *mismatch;
            res.record(!mismatch, inputs, mismatch ? r2(Ul, *mismatch) : 0, mismatch ? r2(Vl, *mismatch) : 0);
        }
    }

    void ef_blocks(LemmaResult& res) {
        for (unsigned u = 0; u <= params_.ef_u_max; ++u) {
            auto [E, F] = build_EF(u);
            const std::size_t p = std::size_t{1} << u, top = 2 * p + 1 + p;
            auto expected = BoundedSet::interval(E.bound(), 0, top + 1);
            expected.erase(p);
            const bool shape = (E & F).empty() && (E | F) == expected && E.test(0);
            const auto mismatch = first_profile_mismatch(E, F, top);
            nlohmann::json inputs = {{"u", u}};
            if (mismatch) inputs["n"] = *mismatch;
            res.record(shape && !mismatch, inputs,
                       {{"shape_ok", shape}, {"r2_E", mismatch ? r2(E, *mismatch) : 0}},
                       {{"shape_ok", true}, {"r2_F", mismatch ? r2(F, *mismatch) : 0}});
        }
    }

    void xy_split(LemmaResult& res) {
        const std::size_t bound = params_.xy_bound;
        auto [X, Y] = build_XY(bound);
        auto expected = BoundedSet::interval(bound, 0, bound);
        expected.erase(1);
        const bool shape = (X & Y).empty() && (X | Y) == expected;
        const auto mismatch = first_profile_mismatch(X, Y, bound - 1);
        nlohmann::json inputs = {{"bound", bound}};
        if (mismatch) inputs["n"] = *mismatch;
        res.record(shape && !mismatch, inputs, {{"shape_ok", shape}}, {{"shape_ok", true}});
    }

    // Instances follow the three ways the identity is put to work: (C, D) =
    // (U, V) with L = min T, (E_u, F_u) with L = 2^(u+1)+1, and (X, Y) with
    // L = 1 + m for the unit residue.
    void four_term(LemmaResult& res) {
        auto battery = [&](const std::string& label, const FourTermInstance& base) {
            for (std::size_t n = base.L; n <= base.K; ++n)
                for (std::size_t N = n; N <= base.K; ++N) {
                    FourTermInstance in = base;
                    in.n = n;
                    in.N = N;
                    nlohmann::json inputs = {{"battery", label}, {"L", in.L}, {"K", in.K}, {"n", n}, {"N", N}};
                    try {
                        validate_hypotheses(in);
                    } catch (const hypothesis_error&) {
                        ++res.rejected;
                        continue;
                    }
                    const auto sides = four_term_sides(in);
                    res.record(sides.holds(), inputs, sides.lhs, sides.rhs);
                }
        };

        for (unsigned l = 0; l <= params_.four_term_l_max; ++l)
            for (auto kind : {FamilyKind::s1t1, FamilyKind::s2t2}) {
                const Family f{kind, l};
                const std::size_t L = predicted_progression(f).r(), K = 2 * L;
                auto b = build_family(f, K + 1);
                auto [U, V] = build_evil_odious(K + 1);
                battery(family_name(f) + " with U/V", {b.A, b.B, U, V, b.T, L, K});
            }

        for (unsigned u = 0; u <= params_.four_term_l_max; ++u) {
            auto [E, F] = build_EF(u);
            const std::size_t p = std::size_t{1} << u;
            const std::size_t L = 2 * p + 1, K = 2 * p + p + 1;
            auto b = build_family({FamilyKind::s1t1, u}, K + 1);
            battery("s1t1:" + std::to_string(u) + " with E/F", {b.A, b.B, E, F, b.T, L, K});
        }

        for (const Family f : {Family{FamilyKind::s1t1, 0}, Family{FamilyKind::s2t2, 1}}) {
            const std::size_t L = 1 + predicted_progression(f).m(), K = 2 * L;
            auto b = build_family(f, K + 1);
            auto [X, Y] = build_XY(K + 1);
            battery(family_name(f) + " with X/Y", {b.A, b.B, X, Y, b.T, L, K});
        }
    }

    void u_sum(LemmaResult& res) {
        for (const auto& rec : grid_records()) {
            if (rec.status != ExtensionStatus::completed || rec.r == 0) continue;
            const ProgressionSpec p(rec.r, rec.m);
            const auto details = u_sum_details(p, 2 * rec.r + 2);
            res.record(details.min_t_odious, {{"r", rec.r}, {"m", rec.m}, {"check", "min T odious"}},
                       digit_sum_2(details.min_t) % 2, 1);
            for (const auto& [n, sides] : details.identities)
                res.record(sides.holds(), {{"r", rec.r}, {"m", rec.m}, {"n", n}}, sides.lhs, sides.rhs);
        }
    }

    void unit_residue(LemmaResult& res) {
        for (const auto& rec : grid_records()) {
            if (rec.r != 1) continue;
            const bool completed = rec.status == ExtensionStatus::completed;
            const bool expected = rec.m == 2 || rec.m == 3;
            res.record(completed == expected, {{"r", 1}, {"m", rec.m}}, status_name(rec.status),
                       expected ? "completed" : "contradiction");
        }
    }

    void power_residue(LemmaResult& res) {
        for (const auto& rec : grid_records()) {
            if (rec.r == 0 || !std::has_single_bit(rec.r)) continue;
            const bool completed = rec.status == ExtensionStatus::completed;
            const bool expected = rec.m == rec.r + 1 || rec.m == 2 * rec.r + 1;
            res.record(completed == expected, {{"r", rec.r}, {"m", rec.m}}, status_name(rec.status),
                       expected ? "completed" : "contradiction");
        }
    }

    // Observable digit conditions on the excluded residue: r odious and r+1
    // evil, for every surviving cell with r >= 2.
    void residue_digits(LemmaResult& res) {
        for (const auto& rec : grid_records()) {
            if (rec.status != ExtensionStatus::completed || rec.r < 2) continue;
            const bool ok = digit_sum_2(rec.r) % 2 == 1 && digit_sum_2(rec.r + 1) % 2 == 0;
            res.record(ok, {{"r", rec.r}, {"m", rec.m}},
                       {{"digit_sum_r", digit_sum_2(rec.r)}, {"digit_sum_r_plus_1", digit_sum_2(rec.r + 1)}},
                       "odd, even");
        }
    }

    void grid(LemmaResult& res) {
        for (const auto& rec : grid_records()) {
            const auto predicted = predicted_family(rec.r, rec.m);
            const bool ok = predicted ? (rec.status == ExtensionStatus::completed && rec.family == predicted)
                                      : (rec.status == ExtensionStatus::contradiction && rec.contradiction.has_value());
            auto label = [](const std::optional<Family>& f) { return f ? family_name(*f) : std::string("none"); };
            res.record(ok, {{"r", rec.r}, {"m", rec.m}, {"bound", params_.grid_bound}},
                       std::string(status_name(rec.status)) + " " + label(rec.family),
                       std::string(predicted ? "completed " : "contradiction ") + label(predicted));
        }
    }

    BoundProfile profile_;
    ProfileParams params_;
    std::optional<std::vector<ClassificationRecord>> grid_;
};

}  // namespace detail

// Runs one check by id, or every check for "all", in lemma_ids() order.
inline SuiteReport run_suite(BoundProfile profile, std::string_view lemma = "all") {
    SuiteReport report{profile, {}};
    detail::SuiteRunner runner(profile);
    if (lemma == "all") {
        for (const auto& id : lemma_ids()) report.lemmas.push_back(runner.run(id));
    } else {
        report.lemmas.push_back(runner.run(std::string(lemma)));
    }
    return report;
}

inline nlohmann::json to_json(const SuiteReport& report) {
    nlohmann::json lemmas = nlohmann::json::array();
    for (const auto& l : report.lemmas) {
        nlohmann::json entry = {{"lemma", l.id},
                                {"instances", l.instances},
                                {"passed", l.passed},
                                {"rejected", l.rejected},
                                {"first_failure", nullptr}};
        if (l.first_failure)
            entry["first_failure"] = {{"inputs", l.first_failure->inputs},
                                      {"lhs", l.first_failure->lhs},
                                      {"rhs", l.first_failure->rhs}};
        lemmas.push_back(std::move(entry));
    }
    return {{"profile", profile_name(report.profile)}, {"all_passed", report.all_passed()}, {"lemmas", lemmas}};
}

}  // namespace reppart
