#include <cstdint>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include <likepowers/exactpoly.hpp>

namespace lp = likepowers;
using lp::BigInt;
using lp::Rational;

namespace
{

// sum_i a_i (i + x)^s evaluated directly.
Rational direct_f(const lp::PSequence &p, std::size_t s, const Rational &x)
{
    Rational total(0);
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p.entries[i] == 0) {
            continue;
        }
        Rational base = Rational(static_cast<long>(i)) + x;
        Rational pw(1);
        for (std::size_t j = 0; j < s; ++j) {
            pw *= base;
        }
        total += p.entries[i] > 0 ? pw : Rational(-pw);
    }
    return total;
}

} // namespace

TEST(FPolynomial, SmallCases)
{
    EXPECT_EQ(lp::f_polynomial(1, 1).to_string(), "-1");
    EXPECT_EQ(lp::f_polynomial(2, 2).to_string(), "4");
    EXPECT_EQ(lp::f_polynomial(3, 5).to_string(), "-360x^2 - 2160x - 3660");
    EXPECT_TRUE(lp::f_polynomial(3, 2).is_zero());
    EXPECT_FALSE(lp::f_polynomial(3, 2).degree().has_value());
}

TEST(FPolynomial, MatchesDirectSum)
{
    std::mt19937_64 rng(20261016);
    std::uniform_int_distribution<long> num(-50, 50);
    std::uniform_int_distribution<long> den(1, 17);
    std::uniform_int_distribution<std::size_t> pick_n(1, 6);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = pick_n(rng);
        const std::size_t s = n + trial % 4;
        const Rational x(num(rng), den(rng));
        const auto p = lp::p_sequence(n);
        EXPECT_EQ(lp::f_polynomial(p, s).evaluate(x), direct_f(p, s, x)) << "n=" << n << " s=" << s;
    }
}

TEST(FPolynomial, DerivativeIdentity)
{
    // F'_{n,s} = s F_{n,s-1}
    for (std::size_t n = 1; n <= 7; ++n) {
        for (std::size_t s = 1; s <= n + 4; ++s) {
            EXPECT_EQ(lp::f_polynomial(n, s).derivative(), lp::f_polynomial(n, s - 1).scaled(BigInt(s)))
                << n << "," << s;
        }
    }
}

TEST(FPolynomial, TopMomentIsConstant)
{
    for (std::size_t n = 1; n <= 10; ++n) {
        const auto p = lp::p_sequence(n);
        const auto m = lp::signed_moments(p.entries, n);
        EXPECT_EQ(lp::f_polynomial(p, n).coeff(0), m[n]);
    }
}

TEST(FPolynomial, WorkGuard)
{
    lp::ExpansionLimits tight;
    tight.max_exponent = 10;
    EXPECT_THROW(lp::f_polynomial(3, 11, tight), lp::resource_error);
}

TEST(PowerSum, ScalingIdentity)
{
    // sum a_i (p i + l)^s = p^s F(l/p)
    const auto pseq = lp::p_sequence(5);
    for (const std::int64_t p : {1, 2, 3, -1, -4}) {
        for (const std::int64_t l : {-5, 0, 1, 7}) {
            for (std::size_t s = 0; s <= 8; ++s) {
                const Rational lhs(lp::power_sum(pseq.entries, s, p, l));
                const Rational rhs =
                    Rational(boost::multiprecision::pow(BigInt(p), static_cast<unsigned>(s)))
                    * lp::f_polynomial(pseq, s).evaluate(Rational(l) / Rational(p));
                EXPECT_EQ(lhs, rhs) << p << " " << l << " " << s;
            }
        }
    }
    EXPECT_THROW(lp::power_sum(pseq.entries, 2, 0, 1), lp::domain_error);
}

TEST(Verify, Vanishing)
{
    for (std::size_t n = 1; n <= 9; ++n) {
        const auto r = lp::verify_vanishing(n);
        EXPECT_TRUE(r.passed) << n;
        EXPECT_EQ(r.rows.size(), n);
    }
}

TEST(Verify, DegreeAndSign)
{
    for (std::size_t n = 1; n <= 8; ++n) {
        const auto r = lp::verify_degree(n, n + 3);
        EXPECT_TRUE(r.passed) << n;
        EXPECT_EQ(r.expected_sign, n % 2 ? -1 : 1);
        EXPECT_EQ(r.leading_constant.sign(), r.expected_sign);
        for (const auto &row : r.rows) {
            ASSERT_TRUE(row.degree.has_value());
            EXPECT_EQ(*row.degree, row.s - n);
        }
    }
}

TEST(Verify, Summary)
{
    lp::VerificationSummary sum;
    lp::VerificationSummary part;
    part.vanishing.push_back(lp::verify_vanishing(3));
    part.degree.push_back(lp::verify_degree(3, 5));
    sum.merge(std::move(part));
    EXPECT_TRUE(sum.passed());
    sum.vanishing.front().passed = false;
    EXPECT_FALSE(sum.passed());
}
