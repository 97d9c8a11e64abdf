#include <hk/poly.hpp>
#include <hk/poly_parser.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace hk;

namespace {
const std::vector<std::string> xyz{"x", "y", "z"};

Poly random_poly(const PrimeField& f, std::size_t nvars, std::mt19937_64& rng, int terms = 6, std::uint32_t maxdeg = 5) {
    std::uniform_int_distribution<std::uint32_t> e(0, maxdeg), c(0, f.characteristic() - 1);
    Poly p(f, nvars);
    for (int t = 0; t < terms; ++t) {
        Monomial m(nvars);
        std::vector<std::uint32_t> ex(nvars);
        for (auto& x : ex) x = e(rng);
        p.add_term(Monomial(ex), c(rng));
    }
    return p;
}
} // namespace

TEST(Monomial, GrevlexOrder) {
    GrevlexGreater gt;
    // degree first
    EXPECT_TRUE(gt(Monomial{0, 0, 2}, Monomial{1, 0, 0}));
    // x > y > z in degree one
    EXPECT_TRUE(gt(Monomial{1, 0, 0}, Monomial{0, 1, 0}));
    EXPECT_TRUE(gt(Monomial{0, 1, 0}, Monomial{0, 0, 1}));
    // y^2 > xz in grevlex (smaller last exponent wins)
    EXPECT_TRUE(gt(Monomial{0, 2, 0}, Monomial{1, 0, 1}));
    EXPECT_FALSE(gt(Monomial{1, 0, 1}, Monomial{0, 2, 0}));
}

TEST(Monomial, Arithmetic) {
    Monomial a{2, 0}, b{0, 3};
    EXPECT_EQ(a * b, (Monomial{2, 3}));
    EXPECT_TRUE(a.divides(Monomial{3, 1}));
    EXPECT_FALSE(a.divides(Monomial{1, 5}));
    EXPECT_EQ(a.pow(3), (Monomial{6, 0}));
    EXPECT_EQ((Monomial{2, 3}).degree(), 5);
}

TEST(GradedPieceBasis, Counts) {
    EXPECT_EQ(graded_piece_basis(2, 3).size(), 4u);
    EXPECT_EQ(graded_piece_basis(3, 5).size(), 21u);
    auto one = graded_piece_basis(3, 0);
    ASSERT_EQ(one.size(), 1u);
    EXPECT_EQ(one[0], Monomial(3));
    EXPECT_TRUE(graded_piece_basis(2, -1).empty());
}

TEST(GradedPieceBasis, DescendingGrevlex) {
    GrevlexGreater gt;
    for (std::int64_t m = 0; m <= 8; ++m) {
        auto b = graded_piece_basis(3, m);
        for (std::size_t i = 1; i < b.size(); ++i) EXPECT_TRUE(gt(b[i - 1], b[i]));
    }
}

TEST(Poly, ParseExamples) {
    PrimeField f5(5), f7(7);
    Poly h = parse_poly("x^3 + y^3 + z^3", xyz, f5);
    EXPECT_EQ(h.size(), 3u);
    EXPECT_EQ(h.degree(), 3);
    EXPECT_TRUE(h.is_homogeneous());
    EXPECT_TRUE(parse_poly("x - x", xyz, f5).is_zero());
    EXPECT_TRUE(parse_poly("7*x*y", xyz, f7).is_zero());
}

TEST(Poly, MulAndPow) {
    PrimeField f2(2);
    const std::vector<std::string> xy{"x", "y"};
    EXPECT_EQ(parse_poly("(x+y)^2", xy, f2), parse_poly("x^2 + y^2", xy, f2));
    EXPECT_EQ(parse_poly("x^2", xy, f2) * parse_poly("y^3", xy, f2), parse_poly("x^2*y^3", xy, f2));
    PrimeField f5(5);
    EXPECT_EQ(parse_poly("(x+y)^2", xy, f5), parse_poly("x^2 + 2xy + y^2", xy, f5));
    EXPECT_EQ(parse_poly("x", xy, f5).pow(0), Poly::constant(f5, 2, 1));
}

TEST(Poly, CanonicalPrinting) {
    PrimeField f5(5);
    EXPECT_EQ(to_string(parse_poly("z^3 + y^3 + x^3", xyz, f5), xyz), "x^3 + y^3 + z^3");
    EXPECT_EQ(to_string(parse_poly("-x*y^3", xyz, f5), xyz), "4*x*y^3");
    EXPECT_EQ(to_string(parse_poly("3", xyz, f5), xyz), "3");
    EXPECT_EQ(to_string(Poly(f5, 3), xyz), "0");
}

TEST(Poly, PrintParseRoundTrip) {
    std::mt19937_64 rng(11);
    for (std::uint64_t p : {2, 3, 5, 7, 101}) {
        PrimeField f(p);
        for (int i = 0; i < 200; ++i) {
            Poly a = random_poly(f, 3, rng);
            EXPECT_EQ(parse_poly(to_string(a, xyz), xyz, f), a);
        }
    }
}

TEST(Poly, FrobeniusIdentity) {
    std::mt19937_64 rng(12);
    for (std::uint64_t p : {2, 3, 5}) {
        PrimeField f(p);
        for (std::uint64_t q = p; q <= p * p; q *= p) {
            for (int i = 0; i < 20; ++i) {
                Poly a = random_poly(f, 3, rng, 4, 3);
                Poly expect(f, 3);
                for (const auto& [m, c] : a.terms()) expect.add_term(m.pow(static_cast<std::uint32_t>(q)), f.pow(c, q));
                EXPECT_EQ(a.pow(q), expect);
            }
        }
    }
}

TEST(Poly, RingLaws) {
    std::mt19937_64 rng(13);
    PrimeField f(7);
    for (int i = 0; i < 50; ++i) {
        Poly a = random_poly(f, 2, rng, 4), b = random_poly(f, 2, rng, 4), c = random_poly(f, 2, rng, 4);
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a - a, Poly(f, 2));
    }
}
