#include <gtest/gtest.h>

#include <insep/invariants.hpp>

#include "oracles.hpp"

using namespace insep;

namespace {

Measures ms(const char* s, unsigned p) { return measures(ResidueSeries::parse(s, prime_field(p))); }

}  // namespace

TEST(Measures, WorkedExample) {
    auto M = ms("y^5*z + y^3*z^3 + y^3*z^8", 2);
    EXPECT_EQ(M.ord, 6);
    EXPECT_EQ(M.ord_y, 3);
    EXPECT_EQ(M.deg_y, 5);
    EXPECT_EQ(M.height, 2);
    EXPECT_EQ(M.ord_z, 1);
    EXPECT_EQ(M.width, 2);
    EXPECT_EQ(M.slope, Slope::rational(5, 1));
    EXPECT_EQ(M.adjacency, Adjacency::distant);
    EXPECT_EQ(M.parity, 1);
    EXPECT_EQ(M.dorder, 2);
    EXPECT_EQ(M.dent.str(), "(2,2)");
    EXPECT_EQ(intricacy(M).str(), "2");
}

TEST(Measures, MonomialAndQuasiMonomial) {
    auto M = ms("y^2*z^3", 5);
    EXPECT_EQ(M.height, 0);
    EXPECT_EQ(M.dorder, 0);
    EXPECT_TRUE(M.slope.inf);
    EXPECT_TRUE(M.quadrant());
    auto Q = ms("y^2*z^3 + z^4", 5);
    EXPECT_EQ(Q.adjacency, Adjacency::adjacent);
    EXPECT_EQ(Q.width, 1);
    EXPECT_TRUE(is_quasi_monomial(Q));
    EXPECT_FALSE(is_quasi_monomial(ms("y^5*z + y^3*z^3", 2)));
    EXPECT_FALSE(is_quasi_monomial(ms("z^3", 5)));
    EXPECT_THROW((void)measures(ResidueSeries::parse("y^2", prime_field(2))), Error);
}

TEST(Corrections, BonusTable) {
    EXPECT_EQ(bonus(Adjacency::adjacent), Correction::one_plus_delta);
    EXPECT_EQ(bonus(Adjacency::close), Correction::eps);
    EXPECT_EQ(bonus(Adjacency::distant), Correction::zero);
}

TEST(Corrections, DefectConfigurations) {
    // adjacent, dorder = height - 1
    auto a = ms("y^3*z + z^3", 5);
    EXPECT_EQ(a.dorder, a.height - 1);
    EXPECT_EQ(defect(a), Correction::delta);
    // adjacent, dorder <= height - 2
    auto b = ms("y^4*z + z^3", 5);
    EXPECT_LE(b.dorder, b.height - 2);
    EXPECT_EQ(defect(b), Correction::zero);
    // close, dorder = height
    auto c = ms("y^2*z + y*z^3", 5);
    EXPECT_EQ(c.dorder, c.height);
    EXPECT_EQ(defect(c), Correction::eps);
}

TEST(AdjustedValue, OrderAgreesWithNumericEvaluation) {
    std::vector<AdjustedValue> all;
    for (int m = -1; m < 6; ++m)
        for (Tag t : {Tag::zero, Tag::eps, Tag::delta}) all.push_back({m, t});
    for (auto& x : all)
        for (auto& y : all) {
            auto sym = x <=> y;
            double dx = x.numeric(), dy = y.numeric();
            EXPECT_EQ(sym < 0, dx < dy);
            EXPECT_EQ(sym == 0, dx == dy);
            // any other admissible constants give the same answer
            EXPECT_EQ(sym < 0, x.numeric(0.01, 0.99) < y.numeric(0.01, 0.99));
        }
    EXPECT_EQ(AdjustedValue::of(3, Correction::one_plus_delta), (AdjustedValue{2, Tag::delta}));
    EXPECT_LT(AdjustedValue::of(3, Correction::one_plus_delta), AdjustedValue::of(2, Correction::eps));
}

TEST(Compare, Examples) {
    InvariantVector a{Variant::height, {2, Tag::zero}, Slope::rational(5, 1), {}};
    InvariantVector b{Variant::height, {2, Tag::delta}, Slope::rational(1, 1), {}};
    EXPECT_TRUE(compare(b, a) < 0);
    InvariantVector c{Variant::height, {2, Tag::zero}, Slope::rational(0, 1), {}};
    EXPECT_TRUE(compare(c, a) < 0);
    InvariantVector inf{Variant::height, {2, Tag::zero}, Slope::infinity(), {}};
    EXPECT_TRUE(compare(inf, a) > 0);
    InvariantVector j{Variant::dorder, {2, Tag::zero}, {}, Dent{false, 2, 2}};
    EXPECT_THROW((void)compare(a, j), Error);
    // dent: plain lexicographic, quadrant on top
    InvariantVector j2{Variant::dorder, {2, Tag::zero}, {}, Dent{false, 1, 5}};
    InvariantVector j3{Variant::dorder, {2, Tag::zero}, {}, Dent{false, 2, 3}};
    InvariantVector j4{Variant::dorder, {2, Tag::zero}, {}, Dent{false, 2, 1}};
    EXPECT_TRUE(compare(j2, j) < 0);
    EXPECT_TRUE(compare(j3, j) > 0);
    EXPECT_TRUE(compare(j4, j) < 0);
    EXPECT_TRUE(realizes_better(Dent{false, 1, 1}, Dent{false, 2, 5}));
    EXPECT_TRUE(realizes_better(Dent{false, 2, 3}, Dent{false, 2, 1}));
    EXPECT_TRUE(realizes_better(Dent{}, Dent{false, 1, 1}));
}

TEST(Measures, HeightBoundAndQuadrantLaw) {
    std::mt19937_64 rng(9);
    for (unsigned p : {2u, 3u, 5u}) {
        auto f = prime_field(p);
        for (int i = 0; i < 300; ++i) {
            auto F = ResidueSeries::reduce(oracle::random_poly(rng, f, 10, 1 + i % 7, 1));
            if (F.is_zero()) continue;
            auto M = measures(F);
            EXPECT_LE(M.height, M.deg_y - 2 + M.adj());
            EXPECT_GE(M.dorder, 0);
            EXPECT_EQ(M.quadrant(), M.dorder == 0);
            EXPECT_EQ(M.ord, F.ord());
            EXPECT_EQ(M.ord_y, F.ord_y());
            EXPECT_EQ(M.ord_z, F.ord_z());
        }
    }
}
