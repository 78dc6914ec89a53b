#include "support.hpp"

#include <gtest/gtest.h>

using namespace latpts;
using namespace latpts::testing;

TEST(Rational, ParsesIntegersAndFractions) {
    EXPECT_EQ(parse_rational("7"), R(7));
    EXPECT_EQ(parse_rational("-3/6"), R(-1, 2));
    EXPECT_EQ(parse_rational("+10/4"), R(5, 2));
    EXPECT_EQ(to_string(R(6, 4)), "3/2");
    EXPECT_EQ(to_string(R(-8, 4)), "-2");
}

TEST(Rational, RejectsMalformedWithPosition) {
    for (const char *bad : {"", "1/0", "x", "1/", "/2", "1.5", "1//2", " 1", "4/-2"}) {
        try {
            parse_rational(bad);
            ADD_FAILURE() << "accepted '" << bad << "'";
        } catch (const ParseError &e) {
            EXPECT_NE(std::string(e.what()).find("position"), std::string::npos) << e.what();
        }
    }
}

TEST(Rational, FloorCeilFloorDiv) {
    EXPECT_EQ(floor(R(-7, 2)), -4);
    EXPECT_EQ(ceil(R(-7, 2)), -3);
    EXPECT_EQ(floor(R(29, 9)), 3);
    EXPECT_EQ(floor_div(Integer(-7), Integer(2)), -4);
    EXPECT_EQ(floor_div(Integer(7), Integer(-2)), -4);
}

TEST(QuadraticSurd, FloorMatchesExactComparisons) {
    // a + b sqrt(r) against integer m by squaring, over a grid of inputs.
    for (long an = -6; an <= 6; ++an)
        for (long bn = -3; bn <= 3; ++bn)
            for (long rn = 0; rn <= 9; ++rn) {
                QuadraticSurd x{R(an, 2), R(bn, 3), R(rn)};
                Integer m = x.floor();
                EXPECT_GE((x - Rational(m)).sign(), 0);
                EXPECT_LT((x - Rational(m + 1)).sign(), 0);
                EXPECT_EQ(x.ceil(), -(-x).floor());
            }
    EXPECT_EQ((QuadraticSurd{R(0), R(1), R(4)}).floor(), 2) << "perfect square";
    EXPECT_EQ((QuadraticSurd{R(0), R(1), R(2)}).floor(), 1);
}

TEST(Matrix, DeterminantExamples) {
    EXPECT_EQ(determinant(RationalMatrix::identity(3)), 1);
    EXPECT_EQ(determinant(rmat({{2, 0}, {0, 3}})), 6);
    EXPECT_EQ(determinant(rmat({{0, 1}, {-1, 2}})), 1);
    EXPECT_EQ(determinant(rmat({{1, 2}, {2, 4}})), 0);
}

TEST(Matrix, DeterminantAgreesWithCofactorOracle) {
    SplitMix64 rng(11);
    for (int t = 0; t < 200; ++t) {
        std::size_t n = rng.uniform(1, 4);
        RationalMatrix m = random_matrix(rng, n, n, 5);
        if (t % 7 == 0 && n > 1)
            for (std::size_t j = 0; j < n; ++j)
                m(1, j) = m(0, j) * R(3, 2);  // singular
        EXPECT_EQ(determinant(m), cofactor_determinant(m));
    }
}

TEST(Matrix, InverseAndRank) {
    SplitMix64 rng(12);
    for (int t = 0; t < 50; ++t) {
        std::size_t n = rng.uniform(1, 4);
        RationalMatrix m = random_matrix(rng, n, n, 4);
        if (determinant(m) == 0) {
            EXPECT_THROW(inverse(m), RankError);
            EXPECT_LT(rank(m), n);
            continue;
        }
        EXPECT_EQ(m * inverse(m), RationalMatrix::identity(n));
        EXPECT_EQ(rank(m), n);
    }
    EXPECT_THROW(RationalMatrix(0, 2), DimensionError);
    EXPECT_THROW(rmat({{1, 2}, {3}}), DimensionError);
}

TEST(Gauge, OrderingAcrossKinds) {
    GaugeValue one = GaugeValue::rational(1);
    GaugeValue s2 = GaugeValue::sqrt_of(2);
    EXPECT_LT(one, s2);
    EXPECT_LT(s2, GaugeValue::rational(R(3, 2)));
    EXPECT_EQ(GaugeValue::sqrt_of(R(9, 4)), GaugeValue::rational(R(3, 2)));
    EXPECT_FALSE(GaugeValue::sqrt_of(1).identical(one));
    EXPECT_THROW(GaugeValue::rational(-1), InvariantError);
}
