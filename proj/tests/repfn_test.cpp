#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "oracles.hpp"
#include "reppart/builders.hpp"
#include "reppart/repfn.hpp"

using namespace reppart;

namespace {

TEST(Repfn, SmallSet) {
    const BoundedSet s(8, {0, 1, 2, 3});
    EXPECT_EQ(r2(s, 3), 2u);
    EXPECT_EQ(r1(s, 2), 3u);
    EXPECT_EQ(r2(s, 2), 1u);
    EXPECT_EQ(r3(s, 2), 2u);
}

TEST(Repfn, FamilyValue) {
    const auto A = build_family({FamilyKind::s1t1, 1}, 14).A;
    EXPECT_EQ(r2(A, 13), 2u);  // (0,13), (4,9)
}

TEST(Repfn, RejectsUnderWindowedQueries) {
    const BoundedSet s(8, {0, 1});
    EXPECT_THROW(r2(s, 8), window_error);
    EXPECT_THROW(r1(s, 9), window_error);
    EXPECT_THROW(r3(s, 100), window_error);
    EXPECT_THROW(r2_profile(s, 8), window_error);
    EXPECT_THROW(r_cross(s, BoundedSet(4), 5), window_error);
    EXPECT_THROW(r2_prefix(s, 3, 8), window_error);
}

// Every subset of [0, 10) and every n in the window.
TEST(Repfn, R1IsR2PlusR3Exhaustively) {
    constexpr std::size_t bound = 10;
    for (std::uint32_t mask = 0; mask < (1u << bound); ++mask) {
        BoundedSet s(bound);
        for (std::size_t i = 0; i < bound; ++i)
            if (mask >> i & 1) s.insert(i);
        for (std::size_t n = 0; n < bound; ++n) ASSERT_EQ(r1(s, n), r2(s, n) + r3(s, n));
    }
}

TEST(Repfn, PointwiseMatchesOracleOnRandomSets) {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t bound = 1 + rng() % 1024;
        const auto e = oracle::random_elements(rng, bound, 0.1 + 0.8 * (trial % 5) / 5.0);
        const auto s = oracle::to_set(e, bound);
        for (int q = 0; q < 20; ++q) {
            const std::size_t n = rng() % bound;
            ASSERT_EQ(r1(s, n), oracle::r1(e, n));
            ASSERT_EQ(r2(s, n), oracle::r2(e, n));
            ASSERT_EQ(r3(s, n), oracle::r3(e, n));
            ASSERT_EQ(r1(s, n), r2(s, n) + r3(s, n));
        }
    }
}

TEST(Repfn, ProfileMatchesOracleOn100RandomSets) {
    std::mt19937_64 rng(29);
    constexpr std::size_t N = 2048;
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t bound = N + 1 + rng() % 200;
        const auto e = oracle::random_elements(rng, bound, 0.02 + 0.96 * (trial % 10) / 10.0);
        const auto got = r2_profile(oracle::to_set(e, bound), N);
        ASSERT_EQ(got.values, oracle::r2_profile(e, N)) << "trial " << trial;
        ASSERT_EQ(got.variant, RepVariant::r2);
        ASSERT_EQ(got.source_bound, bound);
    }
}

TEST(Repfn, ProfileVariantsMatchPointwise) {
    std::mt19937_64 rng(31);
    for (std::size_t N : {0u, 1u, 63u, 64u, 65u, 127u, 300u}) {
        const auto s = oracle::to_set(oracle::random_elements(rng, N + 1, 0.5), N + 1);
        const auto p1 = rep_profile(s, N, RepVariant::r1);
        const auto p3 = rep_profile(s, N, RepVariant::r3);
        for (std::size_t n = 0; n <= N; ++n) {
            ASSERT_EQ(p1.values[n], r1(s, n)) << N << " " << n;
            ASSERT_EQ(p3.values[n], r3(s, n)) << N << " " << n;
        }
    }
}

TEST(Repfn, ProfileOfTheEmptySetIsZero) {
    const auto p = r2_profile(BoundedSet(100), 99);
    EXPECT_EQ(p.values, std::vector<std::uint64_t>(100, 0));
}

TEST(Repfn, ProfileShapeInvariants) {
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t bound = 64 + rng() % 400;
        const auto s = oracle::to_set(oracle::random_elements(rng, bound / 3, 0.6), bound);
        const auto p = r2_profile(s, bound - 1);
        const std::size_t top = s.max().value_or(0);
        for (std::size_t n = 0; n < bound; ++n) {
            if (n > 2 * top) {
                ASSERT_EQ(p.values[n], 0u);
            }
            ASSERT_LE(p.values[n], (n + 1) / 2);
        }
    }
}

TEST(Repfn, EvilOdiousProfilesAgree) {
    for (unsigned l = 1; l <= 8; ++l) {
        const std::size_t N = (std::size_t{2} << l) - 2;
        auto [U, V] = build_evil_odious(std::size_t{1} << l);
        const auto pu = r2_profile(U.with_bound(N + 1), N), pv = r2_profile(V.with_bound(N + 1), N);
        for (std::size_t n = 1; n <= N; ++n) ASSERT_EQ(pu.values[n], pv.values[n]) << l << " " << n;
    }
}

TEST(Repfn, Cross) {
    const BoundedSet s(4, {0, 1}), w(4, {1, 2});
    EXPECT_EQ(r_cross(s, w, 2), 2u);
    EXPECT_EQ(r_cross(s, BoundedSet(4), 2), 0u);

    auto [U, V] = build_evil_odious(4);
    EXPECT_EQ(r_cross(U.with_bound(5), V.with_bound(5), 4), 1u);  // (3,1)
}

TEST(Repfn, CrossIsSymmetricAndMatchesOracle) {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t bound = 1 + rng() % 300;
        const auto ea = oracle::random_elements(rng, bound, 0.4), eb = oracle::random_elements(rng, bound, 0.4);
        const auto a = oracle::to_set(ea, bound), b = oracle::to_set(eb, bound);
        for (std::size_t n = 0; n < bound; n += 1 + rng() % 7) {
            ASSERT_EQ(r_cross(a, b, n), r_cross(b, a, n));
            ASSERT_EQ(r_cross(a, b, n), oracle::r_cross(ea, eb, n));
        }
    }
}

TEST(Repfn, Prefix) {
    const BoundedSet s(12, {0, 3, 5, 9});
    EXPECT_EQ(r2_prefix(s, 5, 8), 1u);  // (3,5); (0,8) absent
    EXPECT_EQ(r2_prefix(s, 11, 9), r2(s, 9));
}

TEST(Repfn, PrefixAtNEqualsFullCount) {
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t bound = 2 + rng() % 500;
        const auto e = oracle::random_elements(rng, bound, 0.5);
        const auto s = oracle::to_set(e, bound);
        for (std::size_t n = 0; n < bound; n += 1 + rng() % 5) {
            ASSERT_EQ(r2_prefix(s, n, n), r2(s, n));
            ASSERT_EQ(r2_prefix(s, bound - 1, n), r2(s, n));
            const std::size_t x = n / 2 + rng() % (n / 2 + 1);
            ASSERT_EQ(r2_prefix(s, x, n), oracle::r2(oracle::to_set(e, bound).with_bound(x + 1).elements(), n));
        }
    }
}

}  // namespace
