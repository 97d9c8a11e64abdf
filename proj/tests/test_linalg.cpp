#include <hk/linalg.hpp>

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

using namespace hk;

TEST(Linalg, RankExamples) {
    PrimeField f5(5), f2(2);
    MatrixFF id(f5, 3, 3, {1, 0, 0, 0, 1, 0, 0, 0, 1});
    EXPECT_EQ(rank(id), 3u);
    EXPECT_EQ(kernel_dim(id), 0u);
    EXPECT_EQ(rank(MatrixFF(f5, 2, 2, {1, 2, 2, 4})), 1u);
    MatrixFF zero(f5, 4, 7);
    EXPECT_EQ(rank(zero), 0u);
    EXPECT_EQ(kernel_dim(zero), 7u);
    EXPECT_EQ(kernel_dim(MatrixFF(f2, 2, 3, {1, 1, 0, 0, 1, 1})), 1u);
}

TEST(Linalg, EmptyShapes) {
    PrimeField f(3);
    EXPECT_EQ(rank(MatrixFF(f, 0, 5)), 0u);
    EXPECT_EQ(kernel_dim(MatrixFF(f, 0, 5)), 5u);
    EXPECT_EQ(rank(MatrixFF(f, 4, 0)), 0u);
}

TEST(Linalg, BuilderSumsDuplicateRows) {
    PrimeField f(5);
    EchelonBuilder b(f, 3);
    std::vector<SparseEntry> col{{1, 2}, {1, 3}};
    EXPECT_FALSE(b.insert(col)); // 2 + 3 = 0 mod 5
    std::vector<SparseEntry> c2{{0, 1}, {2, 4}, {0, 1}};
    EXPECT_TRUE(b.insert(c2));
    EXPECT_EQ(b.rank(), 1u);
}

namespace {
MatrixFF random_matrix(const PrimeField& f, std::mt19937_64& rng, std::size_t r, std::size_t c, double density) {
    std::uniform_int_distribution<std::int64_t> v(1, static_cast<std::int64_t>(f.characteristic()) - 1);
    std::bernoulli_distribution nz(density);
    MatrixFF m(f, r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            if (nz(rng)) m.set(i, j, v(rng));
    return m;
}

/// Plain dense elimination, row operations only.
std::size_t naive_rank(MatrixFF m) {
    const auto& f = m.field();
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t piv = r;
        while (piv < m.rows() && m(piv, c) == 0) ++piv;
        if (piv == m.rows()) continue;
        for (std::size_t k = 0; k < m.cols(); ++k) {
            auto t = m(piv, k);
            m.set(piv, k, m(r, k));
            m.set(r, k, t);
        }
        const auto inv = f.inv(m(r, c));
        for (std::size_t i = r + 1; i < m.rows(); ++i) {
            const auto factor = f.mul(m(i, c), inv);
            if (factor == 0) continue;
            for (std::size_t k = c; k < m.cols(); ++k) m.set(i, k, f.sub(m(i, k), f.mul(factor, m(r, k))));
        }
        ++r;
    }
    return r;
}
} // namespace

TEST(Linalg, RankEqualsTransposeRank) {
    std::mt19937_64 rng(21);
    std::uniform_int_distribution<std::size_t> dim(1, 30);
    for (std::uint64_t p : {2, 3, 5, 101}) {
        PrimeField f(p);
        for (int i = 0; i < 60; ++i) {
            MatrixFF m = random_matrix(f, rng, dim(rng), dim(rng), i % 3 == 0 ? 0.1 : 0.5);
            EXPECT_EQ(rank(m), rank(m.transpose()));
            EXPECT_EQ(rank(m), naive_rank(m));
        }
    }
}

TEST(Linalg, RankInvariantUnderPermutation) {
    std::mt19937_64 rng(22);
    PrimeField f(7);
    for (int i = 0; i < 60; ++i) {
        // low-rank product so rank deficiency is common
        std::size_t r = 1 + rng() % 20, c = 1 + rng() % 20, k = 1 + rng() % 8;
        MatrixFF a = random_matrix(f, rng, r, k, 0.7), b = random_matrix(f, rng, k, c, 0.7);
        MatrixFF m(f, r, c);
        for (std::size_t x = 0; x < r; ++x)
            for (std::size_t y = 0; y < c; ++y) {
                std::uint32_t s = 0;
                for (std::size_t z = 0; z < k; ++z) s = f.add(s, f.mul(a(x, z), b(z, y)));
                m.set(x, y, s);
            }
        std::vector<std::size_t> pr(r), pc(c);
        std::iota(pr.begin(), pr.end(), 0);
        std::iota(pc.begin(), pc.end(), 0);
        std::shuffle(pr.begin(), pr.end(), rng);
        std::shuffle(pc.begin(), pc.end(), rng);
        MatrixFF perm(f, r, c);
        for (std::size_t x = 0; x < r; ++x)
            for (std::size_t y = 0; y < c; ++y) perm.set(x, y, m(pr[x], pc[y]));
        EXPECT_EQ(rank(m), rank(perm));
        EXPECT_LE(rank(m), k);
    }
}

TEST(Linalg, BuilderStopsWhenFull) {
    PrimeField f(3);
    EchelonBuilder b(f, 2);
    std::vector<std::uint32_t> e0{1, 0}, e1{1, 1}, e2{2, 1};
    EXPECT_TRUE(b.insert_dense(e0));
    EXPECT_TRUE(b.insert_dense(e1));
    EXPECT_TRUE(b.full());
    EXPECT_FALSE(b.insert_dense(e2));
    EXPECT_EQ(b.rank(), 2u);
}
