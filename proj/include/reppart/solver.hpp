#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <future>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "builders.hpp"
#include "intset.hpp"

namespace reppart {

enum class ExtensionStatus { completed, contradiction };

inline const char* status_name(ExtensionStatus s) {
    return s == ExtensionStatus::completed ? "completed" : "contradiction";
}

struct Contradiction {
    std::size_t sum;            // the N whose equation R_A(N) = R_B(N) failed
    std::size_t position;       // the integer being decided, N - anchor
    std::int64_t forced_value;  // value chi_A(position) would have to take
};

struct ExtensionOutcome {
    ExtensionStatus status = ExtensionStatus::completed;
    ProgressionSpec progression{0, 2};
    std::size_t bound = 0;
    std::size_t anchor = 0;
    std::size_t frontier = 0;  // every integer below this is decided
    BoundedSet A, B, T;
    std::optional<Contradiction> contradiction;
};

/**
 * Decides the partition A ∪ B = [0, bound) \ T one integer at a time.
 *
 * The anchor a0 = min of the complement of T goes to A. For f > a0 the
 * equation at N = a0 + f involves f only through the pair (a0, f); every
 * other pair lies below f. So chi_A(f) equals the current B-minus-A pair
 * imbalance at N, and that imbalance must be 0 when f is excluded. Any other
 * value is infeasible and ends the run.
 */
inline ExtensionOutcome forced_extend(const ProgressionSpec& p, std::size_t bound) {
    if (bound < p.r() + 2)
        throw std::invalid_argument("forced_extend needs bound >= r + 2 (r=" + std::to_string(p.r()) +
                                    ", bound=" + std::to_string(bound) + ")");
    ExtensionOutcome out;
    out.progression = p;
    out.bound = bound;
    out.T = progression_set(p, bound);
    out.A = BoundedSet(bound);
    out.B = BoundedSet(bound);
    out.anchor = p.r() == 0 ? 1 : 0;
    out.A.insert(out.anchor);

    // imbalance[N] = (pairs of decided B elements summing to N) - (same for A)
    std::vector<std::int64_t> imbalance(2 * bound, 0);
    auto place = [&](BoundedSet& side, std::size_t f, std::int64_t delta) {
        side.for_each_below(f, [&](std::size_t e) { imbalance[e + f] += delta; });
        side.insert(f);
    };

    for (std::size_t f = out.anchor + 1; f < bound; ++f) {
        const std::size_t N = out.anchor + f;
        const std::int64_t demand = imbalance[N];
        const bool excluded = out.T.test(f);
        if (excluded ? demand != 0 : (demand != 0 && demand != 1)) {
            out.status = ExtensionStatus::contradiction;
            out.frontier = f;
            out.contradiction = Contradiction{N, f, demand};
            return out;
        }
        if (excluded) continue;
        if (demand == 1)
            place(out.A, f, -1);
        else
            place(out.B, f, +1);
    }
    out.frontier = bound;
    return out;
}

struct FamilyMatch {
    std::optional<Family> family;
    std::size_t verified_to = 0;  // elementwise agreement on [0, verified_to)
};

// Finds the first family (l ascending; s1t1, s2t2, s1t1+1) whose excluded
// progression is p and whose sets equal the solver's prefix.
inline FamilyMatch match_family(const ExtensionOutcome& out, const ProgressionSpec& p, unsigned l_max) {
    if (out.status != ExtensionStatus::completed) throw std::invalid_argument("match_family needs a completed extension");
    l_max = std::min(l_max, WeightSequence::max_l);
    for (unsigned l = 0; l <= l_max; ++l) {
        if ((std::size_t{1} << l) + 1 > p.m()) break;
        for (auto kind : {FamilyKind::s1t1, FamilyKind::s2t2, FamilyKind::s1t1_shifted}) {
            const Family f{kind, l};
            if (!(predicted_progression(f) == p)) continue;
            auto built = build_family(f, out.bound);
            if (built.A == out.A && built.B == out.B) return {f, out.bound};
        }
    }
    return {};
}

struct ClassificationRecord {
    std::size_t r = 0;
    std::size_t m = 2;
    ExtensionStatus status = ExtensionStatus::completed;
    std::optional<Family> family;
    std::optional<Contradiction> contradiction;

    // Completed without matching any family: the bound was too small or the
    // cell is a genuine counterexample.
    bool flagged() const noexcept { return status == ExtensionStatus::completed && !family; }

    friend bool operator==(const ClassificationRecord& a, const ClassificationRecord& b) {
        auto same_contradiction = [](const auto& x, const auto& y) {
            if (x.has_value() != y.has_value()) return false;
            return !x || (x->sum == y->sum && x->position == y->position && x->forced_value == y->forced_value);
        };
        return a.r == b.r && a.m == b.m && a.status == b.status && a.family == b.family &&
               same_contradiction(a.contradiction, b.contradiction);
    }
};

inline ClassificationRecord classify_cell(std::size_t r, std::size_t m, std::size_t bound) {
    const ProgressionSpec p(r, m);
    auto outcome = forced_extend(p, bound);
    ClassificationRecord rec{r, m, outcome.status, std::nullopt, outcome.contradiction};
    if (outcome.status == ExtensionStatus::completed) rec.family = match_family(outcome, p, WeightSequence::max_l).family;
    return rec;
}

struct GridSpec {
    std::size_t m_min = 2;
    std::size_t m_max = 33;
    std::size_t r_max_factor = 2;  // r ranges over [0, r_max_factor * m]
    std::size_t bound = 2048;
    unsigned threads = 0;  // 0: hardware concurrency
};

// One record per (r, m), sorted by r then m. Cells run concurrently.
inline std::vector<ClassificationRecord> classify_grid(const GridSpec& spec) {
    if (spec.m_min < 2 || spec.m_max < spec.m_min) throw std::invalid_argument("classify_grid needs 2 <= m_min <= m_max");
    std::vector<std::pair<std::size_t, std::size_t>> cells;
    for (std::size_t m = spec.m_min; m <= spec.m_max; ++m)
        for (std::size_t r = 0; r <= spec.r_max_factor * m; ++r) {
            if (spec.bound < r + 2) throw std::invalid_argument("grid bound too small for r=" + std::to_string(r));
            cells.emplace_back(r, m);
        }

    std::vector<ClassificationRecord> records(cells.size());
    unsigned workers = spec.threads ? spec.threads : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, cells.size()));
    std::vector<std::future<void>> jobs;
    for (unsigned w = 0; w < workers; ++w)
        jobs.push_back(std::async(std::launch::async, [&, w] {
            for (std::size_t i = w; i < cells.size(); i += workers)
                records[i] = classify_cell(cells[i].first, cells[i].second, spec.bound);
        }));
    for (auto& j : jobs) j.get();

    std::sort(records.begin(), records.end(), [](const auto& a, const auto& b) {
        return a.r != b.r ? a.r < b.r : a.m < b.m;
    });
    return records;
}

// CSV columns: r,m,status,family,l,contradiction_at,forced_value
inline void write_classification_csv(std::ostream& os, const std::vector<ClassificationRecord>& records) {
    os << "r,m,status,family,l,contradiction_at,forced_value\n";
    for (const auto& rec : records) {
        os << rec.r << ',' << rec.m << ',' << status_name(rec.status) << ',';
        if (rec.family)
            os << family_tag(rec.family->kind) << ',' << rec.family->l;
        else
            os << "none,";
        os << ',';
        if (rec.contradiction) os << rec.contradiction->sum << ',' << rec.contradiction->forced_value;
        else os << ',';
        os << '\n';
    }
}

inline std::vector<ClassificationRecord> read_classification_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line != "r,m,status,family,l,contradiction_at,forced_value")
        throw std::invalid_argument("classification csv: unexpected header");
    std::vector<ClassificationRecord> out;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cols;
        std::stringstream ss(line);
        for (std::string c; std::getline(ss, c, ',');) cols.push_back(c);
        if (line.back() == ',') cols.emplace_back();
        if (cols.size() != 7) throw std::invalid_argument("classification csv: expected 7 columns in '" + line + "'");

        ClassificationRecord rec;
        rec.r = detail::parse_size(cols[0], "r");
        rec.m = detail::parse_size(cols[1], "m");
        if (cols[2] == "completed") rec.status = ExtensionStatus::completed;
        else if (cols[2] == "contradiction") rec.status = ExtensionStatus::contradiction;
        else throw std::invalid_argument("classification csv: bad status '" + cols[2] + "'");
        if (cols[3] != "none")
            rec.family = Family{parse_family_tag(cols[3]), static_cast<unsigned>(detail::parse_size(cols[4], "l"))};
        if (!cols[5].empty()) {
            const std::size_t sum = detail::parse_size(cols[5], "contradiction_at");
            const std::int64_t forced = std::stoll(cols[6]);
            // position = sum - anchor; the anchor is 1 exactly when r = 0
            rec.contradiction = Contradiction{sum, sum - (rec.r == 0 ? 1 : 0), forced};
        }
        out.push_back(std::move(rec));
    }
    return out;
}

}  // namespace reppart
