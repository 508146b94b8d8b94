#include <cmath>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include <likepowers/dense.hpp>

namespace lp = likepowers;
using lp::HpReal;
using lp::Rational;

namespace
{

constexpr unsigned bits = 160;

template <typename Real>
std::set<std::uint64_t> indices(const lp::Selection<Real> &sel)
{
    std::set<std::uint64_t> out;
    for (const auto &t : sel.terms) {
        out.insert(t.index);
    }
    return out;
}

// j^delta through hp_eval, independent of the evaluator used by dense.
HpReal power_oracle(std::uint64_t j, double delta, unsigned prec)
{
    return lp::hp_eval(lp::PowerExpr{Rational(static_cast<long long>(j)), lp::to_rational(delta)}, prec);
}

HpReal signed_power_sum(const lp::Selection<HpReal> &sel, double delta, unsigned prec)
{
    lp::ScopedPrecision guard(prec);
    HpReal acc(0);
    for (const auto &t : sel.terms) {
        const HpReal v = power_oracle(t.index, delta, prec);
        acc += t.sign > 0 ? v : HpReal(-v);
    }
    return acc;
}

} // namespace

TEST(Greedy, HarmonicThreeHalves)
{
    lp::ScopedPrecision prec(bits);
    const auto sel = lp::greedy_subset<HpReal>({lp::Harmonic{}}, HpReal(1.5), HpReal(1e-9));
    ASSERT_EQ(sel.terms.size(), 2u);
    EXPECT_EQ(sel.terms[0].index, 0u);
    EXPECT_EQ(sel.terms[1].index, 1u);
    EXPECT_EQ(sel.residual, 0);
}

TEST(Greedy, RunningSumMonotoneBelowTarget)
{
    lp::ScopedPrecision prec(bits);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> pick(0.0, 4.0);
    for (int i = 0; i < 20; ++i) {
        const HpReal c(pick(rng));
        const auto sel = lp::greedy_subset<HpReal>({lp::Harmonic{}}, c, HpReal(1e-8));
        HpReal run(0);
        std::uint64_t last = 0;
        for (std::size_t k = 0; k < sel.terms.size(); ++k) {
            EXPECT_EQ(sel.terms[k].sign, 1);
            if (k) {
                EXPECT_GT(sel.terms[k].index, last);
            }
            last = sel.terms[k].index;
            run += sel.terms[k].value;
            EXPECT_LE(run, c);
        }
        EXPECT_LT(sel.residual, HpReal(1e-8));
        EXPECT_GE(sel.residual, 0);
    }
}

TEST(Greedy, DoubleWorksToo)
{
    const auto sel = lp::greedy_subset<double>({lp::Harmonic{}}, 2.5, 1e-6);
    EXPECT_LT(std::abs(sel.residual), 1e-6);
}

TEST(Greedy, BudgetFailureKeepsPartial)
{
    lp::ScopedPrecision prec(bits);
    try {
        lp::greedy_subset<HpReal>({lp::Harmonic{}}, HpReal(5), HpReal(1e-6), 50);
        FAIL() << "expected convergence failure";
    } catch (const lp::convergence_failure<HpReal> &e) {
        EXPECT_EQ(e.partial().terms.size(), 50u);
        EXPECT_GT(e.partial().residual, 0);
    }
    EXPECT_THROW(lp::greedy_subset<HpReal>({lp::Harmonic{}}, HpReal(-1), HpReal(1e-6)), lp::domain_error);
    EXPECT_THROW(lp::greedy_subset<HpReal>({lp::Harmonic{}}, HpReal(1), HpReal(0)), lp::domain_error);
}

TEST(Signed, ShiftedHarmonic)
{
    lp::ScopedPrecision prec(bits);
    const auto sel = lp::signed_approx<HpReal>({lp::Harmonic{}}, 1.0, HpReal(0.5), HpReal(1e-3));
    EXPECT_LT(abs(sel.residual), HpReal(1e-3));
    EXPECT_EQ(indices(sel).size(), sel.terms.size());
    const HpReal check = lp::recompute_residual(sel, lp::sequence_value(lp::shifted(1.0, {lp::Harmonic{}})), 2 * bits);
    EXPECT_LT(abs(check), HpReal(1e-3));
}

TEST(Signed, NegativeTargetsAndZeroShift)
{
    lp::ScopedPrecision prec(bits);
    for (const double r : {0.0, 0.25, 2.0}) {
        for (const double c : {-1.3, 0.0, 0.7}) {
            const auto sel = lp::signed_approx<HpReal>({lp::Harmonic{}}, r, HpReal(c), HpReal(1e-3));
            EXPECT_LT(abs(sel.residual), HpReal(1e-3)) << r << " " << c;
            EXPECT_EQ(indices(sel).size(), sel.terms.size());
        }
    }
    EXPECT_THROW(lp::signed_approx<HpReal>(lp::shifted(1, {lp::Harmonic{}}), 1, HpReal(0.5), HpReal(1e-3)),
                 lp::domain_error);
}

TEST(Ln, BlocksAreDisjoint)
{
    lp::ScopedPrecision prec(bits);
    for (const double c : {0.4, -0.9, 1.1}) {
        const auto sel = lp::ln_expand<HpReal>(HpReal(c), HpReal(1e-4));
        EXPECT_EQ(indices(sel).size(), sel.terms.size());
        for (const auto &t : sel.terms) {
            EXPECT_GE(t.index, 2u);
        }
        const HpReal check = lp::recompute_residual(sel, lp::integer_log_value(), 2 * bits);
        EXPECT_LT(abs(check), HpReal(1e-4)) << c;
    }
}

TEST(PowerDelta, Examples)
{
    lp::ScopedPrecision prec(bits);
    const auto harm = lp::expand_power_delta<HpReal>(-1.0, HpReal(0.5), HpReal(1e-6));
    EXPECT_LT(abs(HpReal(HpReal(0.5) - signed_power_sum(harm, -1.0, 2 * bits))), HpReal(1e-6));

    const auto sel = lp::expand_power_delta<HpReal>(1.5, HpReal(1.0), HpReal(1e-4));
    EXPECT_EQ(indices(sel).size(), sel.terms.size());
    EXPECT_LT(abs(HpReal(HpReal(1.0) - signed_power_sum(sel, 1.5, 2 * bits))), HpReal(1e-4));
}

TEST(PowerDelta, DomainErrors)
{
    lp::ScopedPrecision prec(bits);
    for (const double d : {0.0, 1.0, 2.0, 3.0, -1.5, -2.0}) {
        EXPECT_THROW(lp::expand_power_delta<HpReal>(d, HpReal(1), HpReal(1e-4)), lp::domain_error) << d;
    }
}

TEST(PowerDelta, LeadingTerm)
{
    lp::ScopedPrecision prec(bits);
    EXPECT_DOUBLE_EQ(lp::power_delta_leading_constant(1.5), 1.5);
    const HpReal v = lp::eval_sequence({lp::PowerDelta{1.5}}, 1000000) * 1000;
    EXPECT_NEAR(v.convert_to<double>(), 1.5, 0.015);
}

TEST(PowerDelta, UltimatelyPositive)
{
    lp::ScopedPrecision prec(bits);
    for (const double d : {0.5, 1.5, 2.5}) {
        const auto from = lp::power_delta_positive_from(d);
        const lp::SequenceEvaluator<HpReal> e({lp::PowerDelta{d}});
        for (std::uint64_t n = from; n < from + 5000; ++n) {
            ASSERT_GT(e(n), 0) << d << " " << n;
        }
        for (std::uint64_t n = 10000; n <= 10000000; n *= 10) {
            EXPECT_GT(e(n), 0) << d << " " << n;
        }
    }
}

TEST(Totient, Exact)
{
    lp::ScopedPrecision prec(bits);
    const auto one = lp::totient_approx(1.0, 1e-9);
    EXPECT_TRUE(one.primes.empty());
    EXPECT_EQ(one.ratio, 1);
    const auto half = lp::totient_approx(0.5, 1e-12);
    EXPECT_EQ(half.primes, (std::vector<std::uint64_t>{2}));
    EXPECT_EQ(half.ratio, Rational(1, 2));
    const auto third = lp::totient_approx(1.0 / 3, 1e-12);
    EXPECT_EQ(third.primes, (std::vector<std::uint64_t>{2, 3}));
    EXPECT_EQ(third.ratio, Rational(1, 3));
    ASSERT_TRUE(third.composite.has_value());
    EXPECT_EQ(*third.composite, 6);
}

TEST(Totient, RatioIsExactProduct)
{
    lp::ScopedPrecision prec(bits);
    const auto res = lp::totient_approx(0.2, 1e-5);
    Rational prod(1);
    lp::BigInt n(1);
    for (const auto p : res.primes) {
        prod *= Rational(static_cast<long long>(p - 1), static_cast<long long>(p));
        n *= p;
    }
    EXPECT_EQ(prod, res.ratio);
    EXPECT_LT(abs(prod - lp::to_rational(0.2)), lp::to_rational(1e-5));
    EXPECT_EQ(res.composite.value_or(0), n);
    EXPECT_THROW(lp::totient_approx(0.0, 1e-4), lp::domain_error);
    EXPECT_THROW(lp::totient_approx(1.5, 1e-4), lp::domain_error);
}

TEST(PrimePower, Examples)
{
    lp::ScopedPrecision prec(bits);
    EXPECT_TRUE(lp::prime_power_expand<HpReal>(0.5, HpReal(0), HpReal(1e-6)).terms.empty());

    const HpReal c = sqrt(HpReal(3)) - sqrt(HpReal(2));
    const auto one = lp::prime_power_expand<HpReal>(0.5, c, HpReal(1e-12));
    ASSERT_EQ(one.terms.size(), 2u);
    EXPECT_EQ(one.terms[0].index, 3u);
    EXPECT_EQ(one.terms[0].sign, 1);
    EXPECT_EQ(one.terms[1].index, 2u);
    EXPECT_EQ(one.terms[1].sign, -1);

    const auto sel = lp::prime_power_expand<HpReal>(0.4, HpReal(2.0), HpReal(1e-4));
    EXPECT_EQ(indices(sel).size(), sel.terms.size());
    for (const auto &t : sel.terms) {
        EXPECT_TRUE(lp::PrimeStream::shared().up_to(t.index).back() == t.index);
    }
    EXPECT_LT(abs(HpReal(HpReal(2.0) - signed_power_sum(sel, 0.4, 2 * bits))), HpReal(1e-4));
    EXPECT_THROW(lp::prime_power_expand<HpReal>(0.6, HpReal(1), HpReal(1e-4)), lp::domain_error);
    EXPECT_THROW(lp::prime_power_expand<HpReal>(0.0, HpReal(1), HpReal(1e-4)), lp::domain_error);
}

TEST(NonDensity, DyadicTailAvoidsOneTwo)
{
    // <1, 2, 2^-1, 2^2, 2^-2, ...> without its first two elements.
    std::vector<Rational> seq;
    for (int k = 1; k <= 30; ++k) {
        seq.push_back(Rational(1, lp::BigInt(1) << k));
        seq.push_back(Rational(lp::BigInt(1) << (k + 1)));
    }
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<int> coin(0, 2);
    for (int trial = 0; trial < 1000; ++trial) {
        Rational sum(0);
        for (const auto &e : seq) {
            const int c = coin(rng);
            if (c == 1) {
                sum += e;
            } else if (c == 2) {
                sum -= e;
            }
        }
        EXPECT_FALSE(sum > 1 && sum < 2) << sum.str();
    }
}

TEST(NonDensity, ConvergentSumIsBounded)
{
    // E(n) = 2^-n, n >= 1, sums to 1: signed sums stay in [-1, 1] and the
    // greedy never gets near 3.
    auto term = [](std::uint64_t n) { return std::ldexp(1.0, -static_cast<int>(n)); };
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> coin(-1, 1);
    for (int trial = 0; trial < 1000; ++trial) {
        double sum = 0;
        for (std::uint64_t n = 1; n <= 60; ++n) {
            sum += coin(rng) * term(n);
        }
        EXPECT_LE(std::abs(sum), 1.0);
    }
    EXPECT_THROW(lp::detail::greedy_core<double>(term, 1, 3.0, 1e-6, 2000, "stub"), lp::convergence_failure<double>);
}
