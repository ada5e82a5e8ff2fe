#include <gtest/gtest.h>

#include <insep/prepare.hpp>

#include "oracles.hpp"

using namespace insep;

namespace {

ResidueSeries shifted_by(const ResidueSeries& F, const UPoly& a) {
    return ResidueSeries::reduce(oracle::compose(F.poly(), oracle::add(oracle::var_y(F.field_ptr()), oracle::zpoly(a, F.field_ptr())),
                                                 oracle::var_z(F.field_ptr())));
}

}  // namespace

TEST(Prepare, ShiftRaisesOrder) {
    FieldTower T(2, 0);
    auto F = ResidueSeries::parse("y^3*z + y*z^3", T.field());
    auto P = maximize_ord_y(F, T, {.K = 3, .r = 1});
    EXPECT_EQ(P.series.str(), "y^3*z");
    EXPECT_EQ(zpoly_str(P.shift, *T.field()), "z");
    EXPECT_EQ(P.original_ord_y, 1);
    EXPECT_EQ(P.measures.ord_y, 3);
    ASSERT_EQ(P.steps.size(), 1u);
    EXPECT_EQ(P.steps[0].k, 1);
    EXPECT_TRUE(P.complete);
}

TEST(Prepare, WorkedExampleAlreadyPrepared) {
    FieldTower T(2, 0, 2);
    auto F = ResidueSeries::parse("y^5*z + y^3*z^3 + y^3*z^8", T.field());
    auto P = maximize_slope(F, T, {.K = 2, .r = 2});
    EXPECT_TRUE(P.shift.is_zero());
    EXPECT_EQ(P.measures.ord_y, 3);
    EXPECT_EQ(P.measures.slope, Slope::rational(5, 1));
    auto B = brute_force_ord_y(F, 2, 2, T);
    EXPECT_EQ(B.candidates, 16u);
    EXPECT_EQ(B.best_ord_y, 3);
    EXPECT_EQ(B.best_slope, Slope::rational(5, 1));
}

TEST(Prepare, SlopeMatchesOracleOnExample) {
    FieldTower T(3, 0, 2);
    auto F = ResidueSeries::parse("y^4*z + y^3*z^2 + y^3*z^5", T.field());
    auto P = maximize_slope(F, T, {.K = 3, .r = 2});
    auto B = brute_force_ord_y(F, 3, 2, T);
    EXPECT_EQ(P.measures.ord_y, B.best_ord_y);
    EXPECT_EQ(P.measures.slope, B.best_slope);
    EXPECT_EQ(P.series, shifted_by(embed(F, T), P.shift));
}

TEST(Prepare, AgreesWithBruteForce) {
    std::mt19937_64 rng(11);
    for (unsigned p : {2u, 3u}) {
        FieldTower T(p, 5, 2);
        auto f = T.field();
        for (int i = 0; i < 80; ++i) {
            auto F = ResidueSeries::reduce(oracle::random_poly(rng, f, 6, 2 + i % 6, 1));
            if (F.is_zero()) continue;
            Bounds b{.K = 3, .r = 2};
            auto B = brute_force_ord_y(F, 3, 2, T);
            auto P = maximize_ord_y(F, T, b);
            ASSERT_EQ(P.measures.ord_y, B.best_ord_y) << F.str();
            EXPECT_EQ(P.series, shifted_by(embed(F, T), P.shift));
            auto S = maximize_slope(F, T, b);
            EXPECT_EQ(S.measures.ord_y, B.best_ord_y) << F.str();
            EXPECT_EQ(S.measures.slope, B.best_slope) << F.str() << " got " << S.series.str();
            auto J = realize_second_invariant(F, T, b);
            EXPECT_EQ(J.measures.ord_y, B.best_ord_y) << F.str();
            EXPECT_EQ(J.measures.dent, B.best_dent) << F.str() << " got " << J.series.str();
        }
    }
}

TEST(Prepare, PlantedShiftsAreRecovered) {
    std::mt19937_64 rng(13);
    for (unsigned p : {2u, 3u}) {
        FieldTower T(p, 6, 2);
        auto f = T.field();
        for (int i = 0; i < 60; ++i) {
            int m = i % 4;
            auto G = ResidueSeries::reduce(oracle::random_poly(rng, f, 7, 2 + i % 5, 1));
            Poly H(f);
            for (auto& [e, c] : G.poly().terms())
                if (e.a >= m) H.add_term(e, c);
            auto Gm = ResidueSeries::reduce(H);
            if (Gm.is_zero()) continue;
            UPoly a({0, rng() % f->size(), rng() % f->size(), rng() % f->size()});
            auto F = shifted_by(Gm, a);
            if (F.is_zero()) continue;
            auto P = maximize_ord_y(F, T, {.K = 3, .r = 2});
            EXPECT_GE(P.measures.ord_y, Gm.ord_y()) << F.str();
            EXPECT_EQ(P.measures.ord_y, brute_force_ord_y(F, 3, 2, T).best_ord_y) << F.str();
        }
    }
}

TEST(Prepare, RootsNeedingExtension) {
    // y^2 + y + 1 has no root in F_2: the optimal shift lives in F_4
    FieldTower T(2, 0);
    auto F = ResidueSeries::parse("y^2*z + y*z^2 + z^3", T.field());
    auto P1 = maximize_ord_y(F, T, {.K = 2, .r = 1});
    EXPECT_EQ(P1.measures.ord_y, 0);
    EXPECT_FALSE(P1.complete);
    auto P2 = maximize_ord_y(F, T, {.K = 2, .r = 2});
    EXPECT_EQ(T.degree(), 2u);
    EXPECT_EQ(P2.measures.ord_y, 1);
    EXPECT_EQ(P2.series, shifted_by(embed(F, T), P2.shift));
}

TEST(Monomial, DirectAndSwapped) {
    FieldTower T(2, 0);
    auto w = is_monomial(ResidueSeries::parse("y^3*z + y*z^3", T.field()), T, {.K = 3, .r = 1});
    EXPECT_TRUE(w.monomial);
    EXPECT_FALSE(w.swapped);
    EXPECT_EQ(w.exponents, (Exp{3, 1}));

    FieldTower T3(3, 0);
    auto d = is_monomial(ResidueSeries::parse("y*z^2 + 2*y^2*z", T3.field()), T3, {.K = 3, .r = 1});
    EXPECT_TRUE(d.monomial);
    EXPECT_FALSE(d.swapped);
    EXPECT_EQ(d.exponents, (Exp{2, 1}));
    EXPECT_EQ(zpoly_str(d.shift, *T3.field()), "2*z");
    // y^2*(z + y^2): y^4 blocks every y-shift
    auto s = is_monomial(ResidueSeries::parse("y^2*z + y^4", T3.field()), T3, {.K = 3, .r = 1});
    EXPECT_TRUE(s.monomial);
    EXPECT_TRUE(s.swapped);
    EXPECT_EQ(s.exponents, (Exp{2, 1}));
    EXPECT_EQ(zpoly_str(s.shift, *T3.field()), "2*z^2");

    FieldTower T2(2, 0);
    EXPECT_FALSE(is_monomial(ResidueSeries::parse("y^5*z + y^3*z^3 + y^3*z^8", T2.field()), T2, {.K = 3, .r = 1}).monomial);
}
