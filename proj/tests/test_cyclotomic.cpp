#include <gtest/gtest.h>

#include "bentpart/cyclotomic.hpp"
#include "support.hpp"

using namespace bentpart;
using testing_support::uniform;

namespace {

std::vector<Coefficient> v(std::initializer_list<int> xs) {
    std::vector<Coefficient> r;
    for (int x : xs) r.push_back(x);
    return r;
}

CycInt random_cyc(std::uint32_t p) {
    std::vector<std::int64_t> c(p);
    for (auto& x : c) x = static_cast<std::int64_t>(uniform(201)) - 100;
    return CycInt::from_exponent_counts(p, c);
}

}  // namespace

TEST(CycInt, ZetaSquaredReducesAtP3) { EXPECT_EQ(CycInt::root(3, 2).coeffs(), v({-1, -1})); }

TEST(CycInt, OnePlusZetaTimesOnePlusZetaSquared) {
    auto a = CycInt::from_coefficients(3, v({1, 1}));
    auto b = CycInt::from_integer(3, 1) + CycInt::root(3, 2);
    EXPECT_EQ(a * b, CycInt::from_integer(3, 1));
}

TEST(CycInt, IntegersAtP2) {
    auto r = CycInt::from_integer(2, 3) * CycInt::from_integer(2, -5);
    EXPECT_EQ(r.as_rational_integer(), Coefficient(-15));
    EXPECT_EQ(CycInt::root(2, 1), CycInt::from_integer(2, -1));
}

TEST(CycInt, ConjugationExamples) {
    EXPECT_EQ(CycInt::from_integer(5, 7).conj(), CycInt::from_integer(5, 7));
    EXPECT_EQ(CycInt::root(3, 1).conj().coeffs(), v({-1, -1}));
    std::vector<std::int64_t> ones(5, 1);
    auto vanishing = CycInt::from_exponent_counts(5, ones);
    EXPECT_TRUE(vanishing.is_zero());
    EXPECT_TRUE(vanishing.norm().is_zero());
}

TEST(CycInt, AsRationalInteger) {
    EXPECT_EQ(CycInt::from_integer(3, 7).as_rational_integer(), Coefficient(7));
    EXPECT_FALSE(CycInt::root(3, 1).as_rational_integer().has_value());
    CycInt s(5);
    for (int i = 1; i <= 4; ++i) s += CycInt::root(5, i);
    EXPECT_EQ(s.as_rational_integer(), Coefficient(-1));
}

TEST(CycInt, DecomposeSignedRoot) {
    auto a = CycInt::root(3, 2).scaled(-3);
    EXPECT_EQ(a.decompose_signed_root(3), (SignedRoot{-1, 2}));
    EXPECT_EQ(CycInt::from_integer(2, 4).decompose_signed_root(4), (SignedRoot{1, 0}));
    auto b = CycInt::from_coefficients(3, v({3, 3}));
    EXPECT_EQ(b.decompose_signed_root(3), (SignedRoot{-1, 2}));
    EXPECT_FALSE(CycInt::from_coefficients(3, v({3, 1})).decompose_signed_root(3).has_value());
    EXPECT_EQ(CycInt::from_integer(2, -4).decompose_signed_root(4), (SignedRoot{1, 1}));
}

TEST(CycInt, DecomposeAllCandidates) {
    for (std::uint32_t p : {2u, 3u, 5u, 7u})
        for (int sign : {1, -1})
            for (std::uint32_t j = 0; j < p; ++j) {
                auto a = CycInt::root(p, j).scaled(sign * 9);
                auto d = a.decompose_signed_root(9);
                ASSERT_TRUE(d.has_value());
                EXPECT_EQ(CycInt::root(p, d->exponent).scaled(d->sign * 9), a);
                if (p > 2) {
                    EXPECT_EQ(*d, (SignedRoot{sign, j}));
                }
            }
}

TEST(CycInt, RingAxiomsOnRandomTriples) {
    for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
        for (int t = 0; t < 10000; ++t) {
            auto a = random_cyc(p), b = random_cyc(p), c = random_cyc(p);
            ASSERT_EQ(a * b, b * a);
            ASSERT_EQ((a * b) * c, a * (b * c));
            ASSERT_EQ(a * (b + c), a * b + a * c);
            ASSERT_EQ(a - a, CycInt(p));
            ASSERT_EQ(a.conj().conj(), a);
            ASSERT_EQ((a * b).conj(), a.conj() * b.conj());
        }
    }
}

TEST(CycInt, TimesRootIsMultiplication) {
    for (std::uint32_t p : {2u, 3u, 5u, 7u})
        for (int t = 0; t < 200; ++t) {
            auto a = random_cyc(p);
            std::uint64_t j = uniform(3 * p);
            ASSERT_EQ(a.times_root(j), a * CycInt::root(p, j));
        }
}

TEST(CycInt, NormOfSumOfRootsIsRational) {
    // |sum of roots|^2 is real; rational exactly when the Galois orbit sum says so
    for (std::uint32_t p : {3u, 5u, 7u}) {
        auto a = CycInt::root(p, 1).scaled(-3) + CycInt::root(p, 2).scaled(-3);  // not rational in general
        auto n = a.norm();
        EXPECT_EQ(n, n.conj());
    }
}

TEST(CycInt, MixedPRejected) { EXPECT_THROW(CycInt::root(3, 1) + CycInt::root(5, 1), DomainError); }

#ifndef BENTPART_ARBITRARY_PRECISION
TEST(CycInt, OverflowIsAnError) {
    Coefficient big = Coefficient(1) << 100;
    auto a = CycInt::from_integer(3, big);
    EXPECT_THROW(a * a, ArithmeticError);
}
#else
TEST(CycInt, ArbitraryPrecisionHasNoOverflow) {
    Coefficient big = Coefficient(1) << 100;
    auto a = CycInt::from_integer(3, big);
    EXPECT_EQ((a * a).as_rational_integer(), big * big);
}
#endif

TEST(CycInt, ToString) {
    EXPECT_EQ(CycInt::root(3, 2).to_string(), "(-1, -1)");
    EXPECT_EQ(to_string(Coefficient(-1234567)), "-1234567");
}
