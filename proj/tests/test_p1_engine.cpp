#include <hk/acceptance.hpp>
#include <hk/p1_engine.hpp>

#include <gtest/gtest.h>

using namespace hk;

namespace {
IdealSpec ideal(std::uint64_t p, std::vector<std::string> gens) { return acceptance::detail::p1_ideal(p, gens); }
} // namespace

TEST(Splitting, Examples) {
    EXPECT_EQ(splitting_type(ideal(2, {"x", "y"}), 2).twists, (std::vector<std::int64_t>{4}));
    EXPECT_EQ(splitting_type(ideal(3, {"x^2", "x*y", "y^2"}), 3).twists, (std::vector<std::int64_t>{9, 9}));
    EXPECT_EQ(splitting_type(ideal(2, {"x^3", "x*y^2", "y^3"}), 2).twists, (std::vector<std::int64_t>{8, 10}));
}

TEST(Splitting, DegreeSumIdentity) {
    for (const auto& c : acceptance::p1_cases(6)) {
        for (std::uint64_t q : {5, 25}) {
            auto s = splitting_type(c.ideal, q);
            std::int64_t sum = 0, dsum = 0;
            for (auto e : s.twists) sum += e;
            for (auto d : c.ideal.degrees()) dsum += d;
            EXPECT_EQ(sum, static_cast<std::int64_t>(q) * dsum) << c.name;
            EXPECT_EQ(s.twists.size() + 1, c.ideal.size());
        }
    }
}

TEST(Splitting, RejectsNonP1Rings) {
    PrimeField f(5);
    GradedRing r = GradedRing::hypersurface(f, {"x", "y", "z"}, parse_poly("x^3 + y^3 + z^3", {"x", "y", "z"}, f));
    IdealSpec I(r, {r.parse("x"), r.parse("y"), r.parse("z")});
    EXPECT_THROW(splitting_type(I, 5), ring_error);
}

TEST(HnFromSplittings, Examples) {
    auto a = hn_from_splittings({2, 2, {4}}, {2, 4, {8}});
    ASSERT_TRUE(std::holds_alternative<HNData>(a));
    EXPECT_EQ(std::get<HNData>(a), (HNData{2, 1, {1}, {Rational(2)}}));
    auto b = hn_from_splittings({2, 2, {8, 10}}, {2, 4, {16, 20}});
    ASSERT_TRUE(std::holds_alternative<HNData>(b));
    EXPECT_EQ(std::get<HNData>(b), (HNData{3, 1, {1, 1}, {Rational(4), Rational(5)}}));
    auto c = hn_from_splittings({2, 2, {8, 10}}, {2, 4, {15, 21}});
    EXPECT_TRUE(std::holds_alternative<NotStabilized>(c));
    EXPECT_THROW(hn_from_splittings({2, 4, {8}}, {2, 2, {4}}), std::invalid_argument);
}

TEST(Profile, GapExample) {
    IdealSpec I = ideal(2, {"x^3", "x*y^2", "y^3"});
    HNData hn{3, 1, {1, 1}, {Rational(4), Rational(5)}};
    auto rep = verify_h0_profile(I, 2, hn);
    EXPECT_TRUE(rep.ok()) << (rep.failures.empty() ? "" : rep.failures.front());
    EXPECT_EQ(rep.rows[0].h0, 0);
    EXPECT_EQ(rep.rows[8].h0, 1);
    EXPECT_EQ(rep.rows[9].h0, 2);
    EXPECT_EQ(rep.rows[10].h0, 4);
}

TEST(Profile, DetectsWrongHnData) {
    IdealSpec I = ideal(2, {"x^3", "x*y^2", "y^3"});
    auto rep = verify_h0_profile(I, 2, HNData{3, 1, {2}, {Rational(9, 2)}});
    EXPECT_FALSE(rep.ok());
}

TEST(Analyze, CorpusIdeals) {
    P1Options opt;
    opt.qs = {5, 25, 125};
    struct Want {
        std::vector<std::string> gens;
        HNData hn;
        Rational e;
    };
    std::vector<Want> wants{
        {{"x", "y"}, HNData{2, 1, {1}, {Rational(2)}}, Rational(1)},
        {{"x^2", "y^2"}, HNData{2, 1, {1}, {Rational(4)}}, Rational(4)},
        {{"x^2", "x*y", "y^2"}, HNData{3, 1, {2}, {Rational(3)}}, Rational(3)},
        {{"x^3", "x*y^2", "y^3"}, HNData{3, 1, {1, 1}, {Rational(4), Rational(5)}}, Rational(7)},
    };
    for (const auto& w : wants) {
        P1Analysis a = analyze_p1(ideal(5, w.gens), opt);
        ASSERT_TRUE(a.hn.has_value());
        EXPECT_EQ(*a.hn, w.hn);
        EXPECT_EQ(*a.ehk, w.e);
        for (const auto& r : a.residuals) {
            EXPECT_EQ(r.deviation, Rational(0));
            EXPECT_EQ(Rational(static_cast<std::int64_t>(r.phi)), w.e * Rational(static_cast<std::int64_t>(r.q * r.q)));
        }
    }
}

TEST(Analyze, RandomIdealsSatisfyTheorem) {
    P1Options opt;
    opt.qs = {5, 25};
    opt.max_e = 3;
    for (const auto& c : acceptance::p1_cases(8)) {
        P1Analysis a = analyze_p1(c.ideal, opt);
        ASSERT_TRUE(a.hn.has_value()) << c.name;
        EXPECT_TRUE(validate(*a.hn, c.ideal.degrees()).empty());
        EXPECT_TRUE(verify_h0_profile(c.ideal, a.stabilized_q1, *a.hn).ok()) << c.name;
        EXPECT_GT(*a.ehk, Rational(0));
    }
}
