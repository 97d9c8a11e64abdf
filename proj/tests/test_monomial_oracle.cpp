#include <hk/monomial_oracle.hpp>

#include <gtest/gtest.h>

#include <random>

using hk::MonomialIdeal2;
using hk::staircase_colength;

TEST(Staircase, Examples) {
    MonomialIdeal2 m({{1, 0}, {0, 1}});
    for (std::uint64_t q : {1, 2, 3, 7, 64}) EXPECT_EQ(staircase_colength(m, q), q * q);
    EXPECT_EQ(staircase_colength(MonomialIdeal2({{3, 0}, {1, 2}, {0, 3}}), 4), 112u);
    EXPECT_EQ(staircase_colength(MonomialIdeal2({{2, 0}, {1, 1}, {0, 2}}), 3), 27u);
}

TEST(Staircase, MinimalizesGenerators) {
    MonomialIdeal2 a({{2, 0}, {3, 1}, {0, 2}, {0, 2}, {1, 1}});
    EXPECT_EQ(a.gens().size(), 3u);
    EXPECT_EQ(staircase_colength(a, 5), staircase_colength(MonomialIdeal2({{2, 0}, {1, 1}, {0, 2}}), 5));
}

TEST(Staircase, NotPrimaryOrBadQ) {
    EXPECT_FALSE(MonomialIdeal2({{2, 0}, {1, 1}}).is_primary());
    EXPECT_THROW(staircase_colength(MonomialIdeal2({{2, 0}, {1, 1}}), 2), std::invalid_argument);
    EXPECT_THROW(staircase_colength(MonomialIdeal2({{1, 0}, {0, 1}}), 0), std::invalid_argument);
}

namespace {
MonomialIdeal2 random_ideal(std::mt19937_64& rng) {
    std::uniform_int_distribution<std::uint64_t> e(1, 6), e0(0, 6);
    std::vector<MonomialIdeal2::Exponents> g{{e(rng), 0}, {0, e(rng)}};
    for (int k = 0; k < 3; ++k) {
        auto a = e0(rng), b = e0(rng);
        if (a + b) g.emplace_back(a, b);
    }
    return MonomialIdeal2(g);
}
} // namespace

TEST(Staircase, ScalingConsistency) {
    std::mt19937_64 rng(51);
    for (int s = 0; s < 100; ++s) {
        MonomialIdeal2 I = random_ideal(rng);
        for (std::uint64_t q : {2, 3}) {
            std::vector<MonomialIdeal2::Exponents> scaled;
            for (auto [a, b] : I.gens()) scaled.emplace_back(a * q, b * q);
            for (std::uint64_t r : {1, 2, 5}) EXPECT_EQ(staircase_colength(I, q * r), staircase_colength(MonomialIdeal2(scaled), r));
        }
    }
}

TEST(Staircase, MonotoneUnderAddingGenerators) {
    std::mt19937_64 rng(52);
    std::uniform_int_distribution<std::uint64_t> e0(0, 6);
    for (int s = 0; s < 100; ++s) {
        MonomialIdeal2 I = random_ideal(rng);
        auto g = I.gens();
        auto a = e0(rng), b = e0(rng);
        if (a + b == 0) continue;
        g.emplace_back(a, b);
        MonomialIdeal2 J(g);
        for (std::uint64_t q : {1, 2, 4, 8}) EXPECT_LE(staircase_colength(J, q), staircase_colength(I, q));
    }
}

TEST(Staircase, BruteForceCount) {
    std::mt19937_64 rng(53);
    for (int s = 0; s < 50; ++s) {
        MonomialIdeal2 I = random_ideal(rng);
        for (std::uint64_t q : {1, 2, 3}) {
            std::uint64_t count = 0;
            for (std::uint64_t a = 0; a < 40; ++a)
                for (std::uint64_t b = 0; b < 40; ++b) {
                    bool in = false;
                    for (auto [ga, gb] : I.gens()) in = in || (a >= ga * q && b >= gb * q);
                    count += !in;
                }
            EXPECT_EQ(staircase_colength(I, q), count);
        }
    }
}
