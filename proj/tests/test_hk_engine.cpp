#include <hk/hk_engine.hpp>
#include <hk/monomial_oracle.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace hk;

namespace {
const std::vector<std::string> xy{"x", "y"}, xyz{"x", "y", "z"};

IdealSpec free_ideal(std::uint64_t p, const std::vector<std::string>& gens) {
    GradedRing r = GradedRing::free(PrimeField(p), xy);
    std::vector<Poly> g;
    for (const auto& s : gens) g.push_back(r.parse(s));
    return IdealSpec(r, g);
}

IdealSpec cubic_maximal(std::uint64_t p, const std::string& h) {
    PrimeField f(p);
    GradedRing r = GradedRing::hypersurface(f, xyz, parse_poly(h, xyz, f));
    return IdealSpec(r, {r.parse("x"), r.parse("y"), r.parse("z")});
}

/// dim (S / (H, x^q, y^q, z^q))_m computed in the polynomial ring S itself:
/// rows are degree-m monomials of S, columns span H * S_{m-3} and the
/// q-th powers times S_{m-q}. Dense elimination, nothing shared with the engine.
std::uint64_t oracle_cubic_colength(std::uint64_t p, const std::string& h, std::uint64_t q, std::int64_t m) {
    PrimeField f(p);
    Poly H = parse_poly(h, xyz, f);
    auto rows = graded_piece_basis(3, m);
    std::map<Monomial, std::size_t, GrevlexGreater> index;
    for (std::size_t i = 0; i < rows.size(); ++i) index[rows[i]] = i;
    std::vector<std::vector<std::uint32_t>> cols;
    for (const auto& u : graded_piece_basis(3, m - 3)) {
        std::vector<std::uint32_t> c(rows.size(), 0);
        for (const auto& [t, v] : H.terms()) c[index.at(t * u)] = v;
        cols.push_back(c);
    }
    for (std::size_t var = 0; var < 3; ++var) {
        Monomial power(3);
        std::vector<std::uint32_t> e(3, 0);
        e[var] = static_cast<std::uint32_t>(q);
        for (const auto& u : graded_piece_basis(3, m - static_cast<std::int64_t>(q))) {
            std::vector<std::uint32_t> c(rows.size(), 0);
            c[index.at(Monomial(e) * u)] = 1;
            cols.push_back(c);
        }
    }
    // column echelon by Gaussian elimination on the transpose
    std::size_t rank = 0;
    for (std::size_t r = 0; r < rows.size() && rank < cols.size(); ++r) {
        std::size_t piv = rank;
        while (piv < cols.size() && cols[piv][r] == 0) ++piv;
        if (piv == cols.size()) continue;
        std::swap(cols[piv], cols[rank]);
        const auto inv = f.inv(cols[rank][r]);
        for (std::size_t k = rank + 1; k < cols.size(); ++k) {
            const auto fac = f.mul(cols[k][r], inv);
            if (fac == 0) continue;
            for (std::size_t i = r; i < rows.size(); ++i) cols[k][i] = f.sub(cols[k][i], f.mul(fac, cols[rank][i]));
        }
        ++rank;
    }
    return rows.size() - rank;
}
} // namespace

TEST(HKEngine, GradedPieceColengthExamples) {
    IdealSpec m = free_ideal(2, {"x", "y"});
    EXPECT_EQ(graded_piece_colength(m, 4, 3), 4u);
    EXPECT_EQ(graded_piece_colength(m, 4, 5), 2u);
    EXPECT_EQ(graded_piece_colength(m, 4, 7), 0u);
}

TEST(HKEngine, SmoothCubicDegree12AgainstIndependentOracle) {
    IdealSpec I = cubic_maximal(5, "x^3 + y^3 + z^3");
    const auto oracle = oracle_cubic_colength(5, "x^3 + y^3 + z^3", 5, 12);
    EXPECT_EQ(graded_piece_colength(I, 5, 12), oracle);
    EXPECT_EQ(oracle, 0u);
    std::uint64_t total = 0;
    for (std::int64_t m = 0; m <= 16; ++m) {
        const auto o = oracle_cubic_colength(5, "x^3 + y^3 + z^3", 5, m);
        EXPECT_EQ(graded_piece_colength(I, 5, m), o) << "m=" << m;
        total += o;
    }
    EXPECT_EQ(hk_value(I, 5).phi, total);
}

TEST(HKEngine, CuspAgainstIndependentOracle) {
    IdealSpec I = cubic_maximal(7, "x^3 - y^2*z");
    std::uint64_t total = 0;
    for (std::int64_t m = 0; m <= 22; ++m) total += oracle_cubic_colength(7, "x^3 - y^2*z", 7, m);
    EXPECT_EQ(hk_value(I, 7).phi, total);
}

TEST(HKEngine, HkValueExamples) {
    for (std::uint64_t p : {2, 3, 5}) {
        IdealSpec m = free_ideal(p, {"x", "y"});
        IdealSpec sq = free_ideal(p, {"x^2", "y^2"});
        for (std::uint64_t q = p; q <= 27; q *= p) {
            EXPECT_EQ(hk_value(m, q).phi, q * q);
            EXPECT_EQ(hk_value(sq, q).phi, 4 * q * q);
        }
    }
    EXPECT_EQ(hk_value(free_ideal(2, {"x^3", "x*y^2", "y^3"}), 8).phi, 448u);
}

TEST(HKEngine, SyzygyH0Examples) {
    IdealSpec m = free_ideal(5, {"x", "y"});
    EXPECT_EQ(syzygy_h0(m, 5, 9), 0u);
    EXPECT_EQ(syzygy_h0(m, 5, 10), 1u);
    EXPECT_EQ(syzygy_h0(free_ideal(2, {"x^3", "x*y^2", "y^3"}), 2, 8), 1u);
}

TEST(HKEngine, AlternatingSumIdentity) {
    std::vector<IdealSpec> ideals{free_ideal(3, {"x^2", "x*y + y^2", "y^3"}), cubic_maximal(5, "x^3 + y^3 + z^3"),
                                  cubic_maximal(7, "x^3 - y^2*z")};
    for (const auto& I : ideals) {
        const auto p = I.ring().field().characteristic();
        for (std::uint64_t q = 1; q <= p * p; q *= p) {
            auto map = I.frobenius_map(q);
            for (std::int64_t m = 0; m <= static_cast<std::int64_t>(q) * 4 + 4; ++m) {
                DegreeCounts dc = map.degree(m);
                std::int64_t alt = static_cast<std::int64_t>(I.ring().hilbert_dim(m));
                for (auto d : I.degrees()) alt -= static_cast<std::int64_t>(I.ring().hilbert_dim(m - static_cast<std::int64_t>(q) * d));
                alt += static_cast<std::int64_t>(dc.syzygy_h0());
                EXPECT_EQ(static_cast<std::int64_t>(dc.colength()), alt);
            }
        }
    }
}

TEST(HKEngine, FrobeniusFunctoriality) {
    PrimeField f(3);
    GradedRing r = GradedRing::hypersurface(f, xyz, parse_poly("x^3 + y^3 + z^3 + x*y*z", xyz, f));
    std::vector<Poly> g{r.parse("x + y"), r.parse("y^2 - z^2"), r.parse("z")};
    IdealSpec I(r, g);
    std::vector<Poly> gp;
    for (const auto& x : g) gp.push_back(r.frobenius(x, 3));
    IdealSpec Ip(r, gp);
    for (std::uint64_t q : {1, 3}) {
        auto a = I.frobenius_map(q * 3), b = Ip.frobenius_map(q);
        for (std::int64_t m = 0; m <= 30; ++m) {
            EXPECT_EQ(a.degree(m).colength(), b.degree(m).colength()) << "q=" << q << " m=" << m;
            EXPECT_EQ(a.degree(m).rank, b.degree(m).rank);
        }
    }
}

TEST(HKEngine, TailBoundIndependentOfQ) {
    std::vector<IdealSpec> ideals{free_ideal(2, {"x^3", "x*y^2", "y^3"}), free_ideal(5, {"x^2 + y^2", "x*y", "y^3"}),
                                  cubic_maximal(5, "x^3 + y^3 + z^3")};
    for (const auto& I : ideals) {
        const auto p = I.ring().field().characteristic();
        std::int64_t pair = 0;
        for (std::size_t i = 0; i < I.degrees().size(); ++i)
            for (std::size_t j = i + 1; j < I.degrees().size(); ++j) pair = std::max(pair, I.degrees()[i] + I.degrees()[j]);
        const std::int64_t c0 = I.ring().relation_degree();
        for (std::uint64_t q = p; q <= 64; q *= p) {
            HKRow row = hk_value(I, q);
            EXPECT_LE(row.cutoff, static_cast<std::int64_t>(q) * pair + c0) << "q=" << q;
            for (std::int64_t m = row.cutoff; m < row.cutoff + 5; ++m) EXPECT_EQ(graded_piece_colength(I, q, m), 0u);
        }
    }
}

TEST(HKEngine, WorkersDoNotChangeResults) {
    IdealSpec I = cubic_maximal(5, "x^3 + y^3 + z^3");
    EngineLimits one, four;
    four.workers = 4;
    HKRow a = hk_value(I, 25, one), b = hk_value(I, 25, four);
    EXPECT_EQ(a.phi, b.phi);
    EXPECT_EQ(a.cutoff, b.cutoff);
    ASSERT_EQ(a.degrees.size(), b.degrees.size());
    for (std::size_t i = 0; i < a.degrees.size(); ++i) EXPECT_EQ(a.degrees[i].rank, b.degrees[i].rank);
}

TEST(HKEngine, Caps) {
    IdealSpec I = free_ideal(2, {"x", "y"});
    EngineLimits small;
    small.max_matrix_dim = 3;
    EXPECT_THROW(hk_value(I, 8, small), cap_exceeded_error);
    EngineLimits low_degree;
    low_degree.max_degree = 5;
    EXPECT_THROW(hk_value(I, 8, low_degree), cap_exceeded_error);
    EXPECT_THROW(hk_value(I, 6), std::invalid_argument);
}

TEST(HKEngine, SmoothCubicKnownValues) {
    IdealSpec I = cubic_maximal(5, "x^3 + y^3 + z^3");
    EXPECT_EQ(hk_value(I, 5).phi, 55u);
    EXPECT_EQ(hk_value(I, 25).phi, 1405u);
}

TEST(HKEngine, RandomMonomialIdealsMatchStaircase) {
    std::mt19937_64 rng(41);
    std::uniform_int_distribution<std::uint64_t> e(1, 6), e0(0, 6);
    for (int s = 0; s < 20; ++s) {
        std::vector<MonomialIdeal2::Exponents> g{{e(rng), 0}, {0, e(rng)}, {e0(rng), e0(rng)}};
        if (g[2].first + g[2].second == 0) g.pop_back();
        MonomialIdeal2 mi(g);
        GradedRing r = GradedRing::free(PrimeField(3), xy);
        std::vector<Poly> polys;
        for (auto [a, b] : mi.gens())
            polys.push_back(Poly::monomial(r.field(), Monomial{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b)}));
        IdealSpec I(r, polys);
        for (std::uint64_t q = 1; q <= 27; q *= 3) EXPECT_EQ(hk_value(I, q).phi, staircase_colength(mi, q));
    }
}
