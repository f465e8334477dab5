#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "oracles.hpp"
#include "reppart/builders.hpp"

using namespace reppart;

namespace {

using Elements = std::vector<std::size_t>;

Elements as_vector(const std::set<std::size_t>& s) { return {s.begin(), s.end()}; }

TEST(Weights, FamilyWeightLists) {
    EXPECT_EQ(WeightSequence::s1_family(0).weights_below(20), (Elements{2, 4, 8, 16}));
    EXPECT_EQ(WeightSequence::s1_family(1).weights_below(14), (Elements{1, 3, 6, 12}));
    EXPECT_EQ(WeightSequence::s1_family(2).weights_below(100), (Elements{1, 2, 5, 10, 20, 40, 80}));
    EXPECT_EQ(WeightSequence::s2_family(1).weights_below(13), (Elements{2, 3, 6, 12}));
    EXPECT_EQ(WeightSequence::s2_family(2).weights_below(100), (Elements{1, 3, 5, 10, 20, 40, 80}));
    EXPECT_EQ(WeightSequence::s2_family(3).weights_below(40), (Elements{1, 2, 5, 9, 18, 36}));
    EXPECT_EQ(WeightSequence::xy_family().weights_below(40), (Elements{2, 3, 4, 8, 16, 32}));
    EXPECT_EQ(WeightSequence::explicit_list({1, 5, 9}).weights_below(9), (Elements{1, 5}));
}

TEST(Weights, GenerationStopsAtTheFirstWeightReachingTheBound) {
    EXPECT_EQ(WeightSequence::s1_family(4).weights_below(3), (Elements{1, 2}));
    EXPECT_TRUE(WeightSequence::s1_family(0).weights_below(2).empty());
    EXPECT_TRUE(WeightSequence::xy_family().weights_below(2).empty());
    EXPECT_EQ(WeightSequence::xy_family().weights_below(3), (Elements{2}));
}

TEST(Weights, ExplicitListValidation) {
    EXPECT_THROW(WeightSequence::explicit_list({0, 1}), std::invalid_argument);
    EXPECT_THROW(WeightSequence::explicit_list({3, 2}), std::invalid_argument);
    EXPECT_THROW(WeightSequence::s1_family(61), std::invalid_argument);
}

TEST(Weights, S2AtZeroCoincidesWithS1AtZero) {
    EXPECT_EQ(WeightSequence::s2_family(0).weights_below(1 << 14), WeightSequence::s1_family(0).weights_below(1 << 14));
    auto a = build_family({FamilyKind::s1t1, 0}, 1 << 12);
    auto b = build_family({FamilyKind::s2t2, 0}, 1 << 12);
    EXPECT_EQ(a.A, b.A);
    EXPECT_EQ(a.B, b.B);
    EXPECT_EQ(a.progression, b.progression);
}

TEST(EvilOdious, SmallWindow) {
    auto [U, V] = build_evil_odious(8);
    EXPECT_EQ(U.elements(), (Elements{0, 3, 5, 6}));
    EXPECT_EQ(V.elements(), (Elements{1, 2, 4, 7}));
    auto [U2, V2] = build_evil_odious(4);
    EXPECT_EQ(U2.elements(), (Elements{0, 3}));
    EXPECT_EQ(V2.elements(), (Elements{1, 2}));
}

TEST(EvilOdious, PartitionAndHalfDensity) {
    for (unsigned l = 1; l <= 14; ++l) {
        const std::size_t bound = std::size_t{1} << l;
        auto [U, V] = build_evil_odious(bound);
        ASSERT_TRUE(U.contains(0));
        ASSERT_TRUE((U & V).empty());
        ASSERT_EQ((U | V).count(), bound);
        ASSERT_EQ(U.count(), bound / 2);
    }
}

TEST(ParitySets, KnownExamples) {
    auto s1 = build_parity_sets(WeightSequence::s1_family(1), 14);
    EXPECT_EQ(s1.even_set.elements(), (Elements{0, 4, 7, 9, 13}));
    EXPECT_EQ(s1.odd_set.elements(), (Elements{1, 3, 6, 10, 12}));
    EXPECT_TRUE(s1.ambiguous.empty());

    auto s0 = build_parity_sets(WeightSequence::s1_family(0), 16);
    EXPECT_EQ(s0.even_set.elements(), (Elements{0, 6, 10, 12}));

    auto single = build_parity_sets(WeightSequence::explicit_list({1}), 4);
    EXPECT_EQ(single.even_set.elements(), (Elements{0}));
    EXPECT_EQ(single.odd_set.elements(), (Elements{1}));
    EXPECT_TRUE(single.ambiguous.empty());
}

TEST(ParitySets, MatchesSubsetEnumeration) {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 60; ++trial) {
        Elements weights;
        std::size_t w = 0;
        const int k = 1 + static_cast<int>(rng() % 10);
        for (int i = 0; i < k; ++i) weights.push_back(w += 1 + rng() % 9);
        const std::size_t bound = 1 + rng() % 120;
        const auto report = build_parity_sets(WeightSequence::explicit_list(weights), bound);
        const auto expected = oracle::subset_sums(weights, bound);
        ASSERT_EQ(report.even_set.elements(), as_vector(expected.even));
        ASSERT_EQ(report.odd_set.elements(), as_vector(expected.odd));
        Elements both;
        for (auto x : expected.even)
            if (expected.odd.count(x)) both.push_back(x);
        ASSERT_EQ(report.ambiguous.elements(), both);
    }
}

TEST(ParitySets, DetectsAmbiguity) {
    auto r = build_parity_sets(WeightSequence::explicit_list({1, 2, 3}), 10);
    EXPECT_EQ(r.ambiguous.elements(), (Elements{3}));
}

TEST(ParitySets, FamilyWeightsAreNeverAmbiguous) {
    for (std::size_t bound : {std::size_t{100}, std::size_t{1} << 10, std::size_t{1} << 14}) {
        for (unsigned l = 0; l <= 6; ++l) {
            ASSERT_TRUE(build_parity_sets(WeightSequence::s1_family(l), bound).ambiguous.empty()) << l;
            ASSERT_TRUE(build_parity_sets(WeightSequence::s2_family(l), bound).ambiguous.empty()) << l;
        }
        ASSERT_TRUE(build_parity_sets(WeightSequence::xy_family(), bound).ambiguous.empty());
    }
}

TEST(Families, KnownExamples) {
    auto a = build_family({FamilyKind::s1t1, 1}, 14);
    EXPECT_EQ(a.A.elements(), (Elements{0, 4, 7, 9, 13}));
    EXPECT_EQ(a.B.elements(), (Elements{1, 3, 6, 10, 12}));
    EXPECT_EQ(a.T.elements(), (Elements{2, 5, 8, 11}));

    auto b = build_family({FamilyKind::s2t2, 1}, 13);
    EXPECT_EQ(b.A.elements(), (Elements{0, 5, 8, 9}));
    EXPECT_EQ(b.B.elements(), (Elements{2, 3, 6, 11, 12}));
    EXPECT_EQ(b.T.elements(), (Elements{1, 4, 7, 10}));

    auto c = build_family({FamilyKind::s1t1_shifted, 0}, 8);
    EXPECT_EQ(c.A.elements(), (Elements{1, 7}));
    EXPECT_EQ(c.B.elements(), (Elements{3, 5}));
    EXPECT_EQ(c.T.elements(), (Elements{0, 2, 4, 6}));
}

TEST(Families, PredictedProgressions) {
    EXPECT_EQ(predicted_progression({FamilyKind::s1t1, 2}), ProgressionSpec(4, 5));
    EXPECT_EQ(predicted_progression({FamilyKind::s1t1_shifted, 2}), ProgressionSpec(0, 5));
    EXPECT_EQ(predicted_progression({FamilyKind::s2t2, 0}), ProgressionSpec(1, 2));
    EXPECT_EQ(predicted_progression({FamilyKind::s2t2, 1}), ProgressionSpec(1, 3));
    EXPECT_EQ(predicted_progression({FamilyKind::s2t2, 4}), ProgressionSpec(8, 17));
}

TEST(Families, PartitionTheWindowWithThePredictedComplement) {
    for (std::size_t bound : {std::size_t{7}, std::size_t{130}, std::size_t{1000}, std::size_t{1} << 14})
        for (unsigned l = 0; l <= 6; ++l)
            for (auto kind : {FamilyKind::s1t1, FamilyKind::s2t2, FamilyKind::s1t1_shifted}) {
                const Family f{kind, l};
                auto b = build_family(f, bound);
                ASSERT_TRUE((b.A & b.B).empty()) << family_name(f);
                ASSERT_TRUE((b.A & b.T).empty()) << family_name(f);
                ASSERT_TRUE((b.B & b.T).empty()) << family_name(f);
                ASSERT_EQ((b.A | b.B | b.T).count(), bound) << family_name(f) << " bound " << bound;
                ASSERT_EQ(b.T, progression_set(predicted_progression(f), bound));
            }
}

TEST(Families, NamesRoundTrip) {
    for (auto kind : {FamilyKind::s1t1, FamilyKind::s2t2, FamilyKind::s1t1_shifted})
        EXPECT_EQ(parse_family_tag(family_tag(kind)), kind);
    EXPECT_EQ(family_name({FamilyKind::s1t1_shifted, 3}), "s1t1+1:3");
    EXPECT_THROW(parse_family_tag("s3t3"), std::invalid_argument);
}

TEST(EF, SmallBlocks) {
    auto e0 = build_EF(0);
    EXPECT_EQ(e0.E.elements(), (Elements{0}));
    EXPECT_EQ(e0.F.elements(), (Elements{2, 3, 4}));
    EXPECT_EQ(e0.E.bound(), 5u);

    // U_1 = {0}, V_1 = {1}: E = {0} ∪ {3+1} ∪ {5+1}, F = {1} ∪ {3} ∪ {5} ∪ {7}
    auto e1 = build_EF(1);
    EXPECT_EQ(e1.E.elements(), (Elements{0, 4, 6}));
    EXPECT_EQ(e1.F.elements(), (Elements{1, 3, 5, 7}));
}

TEST(EF, PartitionOfTheBlockWindow) {
    for (unsigned u = 0; u <= 8; ++u) {
        auto [E, F] = build_EF(u);
        const std::size_t p = std::size_t{1} << u, top = 2 * p + 1 + p;
        ASSERT_EQ(E.bound(), top + 1);
        ASSERT_TRUE(E.contains(0));
        ASSERT_TRUE((E & F).empty());
        auto expected = BoundedSet::interval(top + 1, 0, top + 1);
        expected.erase(p);
        ASSERT_EQ(E | F, expected) << u;
    }
}

TEST(XY, SmallWindow) {
    auto [X, Y] = build_XY(8);
    EXPECT_EQ(X.elements(), (Elements{0, 5, 6, 7}));
    EXPECT_EQ(Y.elements(), (Elements{2, 3, 4}));
}

TEST(XY, CoversEverythingButOne) {
    for (std::size_t bound : {std::size_t{2}, std::size_t{9}, std::size_t{1} << 14}) {
        auto [X, Y] = build_XY(bound);
        ASSERT_TRUE((X & Y).empty());
        ASSERT_TRUE(X.contains(0));
        ASSERT_FALSE(X.contains(1) || Y.contains(1));
        ASSERT_EQ((X | Y).count(), bound - 1);
    }
}

}  // namespace
