#include "feqlab/rational.hpp"

#include <gtest/gtest.h>

#include <random>

using feqlab::BigInt;
using feqlab::DomainError;
using feqlab::Rational;
using feqlab::rat;

namespace {

Rational random_rational(std::mt19937& rng) {
    std::uniform_int_distribution<long long> num(-50, 50);
    std::uniform_int_distribution<long long> den(1, 30);
    return rat(num(rng), den(rng));
}

} // namespace

TEST(Rational, ReducesToLowestTerms) {
    EXPECT_EQ(rat(2, 4), rat(1, 2));
    EXPECT_EQ(rat(2, 4).numerator(), 1);
    EXPECT_EQ(rat(2, 4).denominator(), 2);
}

TEST(Rational, NormalizesSigns) {
    EXPECT_EQ(rat(-3, -6), rat(1, 2));
    EXPECT_EQ(rat(3, -6), rat(-1, 2));
    EXPECT_EQ(rat(3, -6).denominator(), 1 * 2);
    EXPECT_TRUE(rat(3, -6).numerator() < 0);
}

TEST(Rational, ZeroDenominatorThrows) {
    EXPECT_THROW(rat(1, 0), DomainError);
    EXPECT_THROW(Rational(1) / Rational(0), DomainError);
}

TEST(Rational, ZeroIsCanonical) {
    EXPECT_EQ(rat(0, 7), Rational(0));
    EXPECT_EQ(rat(0, 7).denominator(), 1);
    EXPECT_TRUE((rat(5, 3) - rat(5, 3)).is_zero());
}

TEST(Rational, Arithmetic) {
    EXPECT_EQ(rat(1, 2) + rat(1, 3), rat(5, 6));
    EXPECT_EQ(rat(1, 2) - rat(1, 3), rat(1, 6));
    EXPECT_EQ(rat(2, 3) * rat(3, 4), rat(1, 2));
    EXPECT_EQ(rat(1, 2) / rat(1, 4), Rational(2));
    EXPECT_EQ(-rat(1, 2), rat(-1, 2));
}

TEST(Rational, Ordering) {
    EXPECT_LT(rat(1, 3), rat(1, 2));
    EXPECT_LT(rat(-1, 2), rat(-1, 3));
    EXPECT_GE(rat(2, 4), rat(1, 2));
}

TEST(Rational, ToString) {
    EXPECT_EQ(rat(1, 2).to_string(), "1/2");
    EXPECT_EQ(rat(-4, 2).to_string(), "-2");
    EXPECT_EQ(Rational(0).to_string(), "0");
}

TEST(Rational, NoPrecisionLossAtScale) {
    // 100! / 99! = 100 stays exact far past 64-bit range.
    Rational big(feqlab::factorial(100));
    Rational smaller(feqlab::factorial(99));
    EXPECT_EQ(big / smaller, Rational(100));
    Rational tiny = Rational(1) / big;
    EXPECT_EQ(tiny * big, Rational(1));
}

TEST(Rational, FieldAxiomsOnRandomTriples) {
    std::mt19937 rng(2024);
    for (int trial = 0; trial < 500; ++trial) {
        Rational a = random_rational(rng);
        Rational b = random_rational(rng);
        Rational c = random_rational(rng);
        EXPECT_EQ(a + b, b + a);
        EXPECT_EQ((a + b) + c, a + (b + c));
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_EQ(a + Rational(0), a);
        EXPECT_EQ(a * Rational(1), a);
        EXPECT_TRUE((a - a).is_zero());
        if (!a.is_zero()) EXPECT_EQ(a / a, Rational(1));
    }
}

TEST(Rational, FactorialAndBinomial) {
    EXPECT_EQ(feqlab::factorial(0), 1);
    EXPECT_EQ(feqlab::factorial(5), 120);
    EXPECT_EQ(feqlab::binomial(4, 2), 6);
    EXPECT_EQ(feqlab::binomial(10, 0), 1);
    EXPECT_EQ(feqlab::binomial(3, 5), 0);
    // Pascal rule on a grid.
    for (unsigned n = 1; n <= 12; ++n)
        for (unsigned k = 1; k <= n; ++k)
            EXPECT_EQ(feqlab::binomial(n, k),
                      feqlab::binomial(n - 1, k - 1) + feqlab::binomial(n - 1, k));
}
