#include <cstdint>
#include <numeric>
#include <vector>

#include <gtest/gtest.h>

#include <likepowers/errors.hpp>
#include <likepowers/pseq.hpp>

namespace lp = likepowers;

namespace
{

std::vector<int> as_ints(const std::vector<lp::Trit> &t)
{
    return {t.begin(), t.end()};
}

// Moments in plain int64, fine for n <= 8.
std::int64_t moment(const std::vector<lp::Trit> &a, int s)
{
    std::int64_t total = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        std::int64_t pw = 1;
        for (int j = 0; j < s; ++j) {
            pw *= static_cast<std::int64_t>(i);
        }
        total += a[i] * pw;
    }
    return total;
}

} // namespace

TEST(PSequence, FirstThree)
{
    EXPECT_EQ(as_ints(lp::p_sequence(1).entries), (std::vector<int>{1, -1}));
    EXPECT_EQ(as_ints(lp::p_sequence(2).entries), (std::vector<int>{1, -1, -1, 1}));
    EXPECT_EQ(as_ints(lp::p_sequence(3).entries), (std::vector<int>{1, -1, -1, 0, 1, 1, -1}));
}

TEST(PSequence, FourthFromRules)
{
    // P_3 has a_0 = -a_k, so P_4 appends the reversal.
    EXPECT_EQ(as_ints(lp::p_sequence(4).entries),
              (std::vector<int>{1, -1, -1, 0, 1, 1, -1, -1, 1, 1, 0, -1, -1, 1}));
}

TEST(PSequence, Lengths)
{
    const std::vector<std::size_t> expect{2, 4, 7, 14, 27, 54, 107};
    for (std::size_t n = 1; n <= expect.size(); ++n) {
        EXPECT_EQ(lp::pseq_length(n), expect[n - 1]);
        EXPECT_EQ(lp::p_sequence(n).size(), expect[n - 1]);
    }
}

TEST(PSequence, Structure)
{
    for (std::size_t n = 1; n <= 12; ++n) {
        const auto p = lp::p_sequence(n);
        EXPECT_EQ(p.entries.front(), 1);
        EXPECT_NE(p.entries.back(), 0);
        EXPECT_EQ(std::accumulate(p.entries.begin(), p.entries.end(), 0), 0) << n;
        // odd n have a_0 = -a_k, even n have a_0 = a_k
        EXPECT_EQ(p.entries.back(), n % 2 ? -1 : 1) << n;
    }
}

TEST(PSequence, LowMomentsVanish)
{
    for (std::size_t n = 1; n <= 8; ++n) {
        const auto p = lp::p_sequence(n);
        for (int s = 0; s < static_cast<int>(n); ++s) {
            EXPECT_EQ(moment(p.entries, s), 0) << "n=" << n << " s=" << s;
        }
        EXPECT_NE(moment(p.entries, static_cast<int>(n)), 0) << n;
    }
}

TEST(PSequence, NextMatchesIndexed)
{
    auto p = lp::p_sequence(1);
    for (std::size_t n = 2; n <= 10; ++n) {
        p = lp::next_p_sequence(p);
        EXPECT_EQ(p.n, n);
        EXPECT_EQ(p.entries, lp::p_sequence(n).entries);
    }
}

TEST(PSequence, BadIndex)
{
    EXPECT_THROW(lp::p_sequence(0), lp::domain_error);
    EXPECT_THROW(lp::p_sequence(25), lp::domain_error);
    EXPECT_NO_THROW(lp::p_sequence(25, 25));
}

TEST(QSequence, ThirdFromConvolution)
{
    EXPECT_EQ(as_ints(lp::q_sequence(3).entries), (std::vector<int>{1, -1, 0, -1, 0, 1, 0, 1, -1}));
}

TEST(QSequence, Balanced)
{
    for (std::size_t n = 2; n <= 10; ++n) {
        const auto q = lp::q_sequence(n);
        EXPECT_EQ(q.entries.size(), lp::pseq_length(n) + 2);
        EXPECT_EQ(std::accumulate(q.entries.begin(), q.entries.end(), 0), 0);
        for (const auto b : q.entries) {
            EXPECT_LE(std::abs(b), 1);
        }
    }
    EXPECT_THROW(lp::q_sequence(1), lp::domain_error);
}

TEST(IndexSets, FourthSets)
{
    const auto sets = lp::index_sets(4);
    EXPECT_EQ(sets.x, (std::vector<std::size_t>{1, 2, 6, 7, 11, 12}));
    EXPECT_EQ(sets.y, (std::vector<std::size_t>{4, 5, 8, 9, 13}));
}

TEST(IndexSets, CardinalityAndNesting)
{
    for (std::size_t n = 1; n <= 12; ++n) {
        const auto s = lp::index_sets(n);
        EXPECT_EQ(s.x.size(), s.y.size() + 1) << n;
    }
    for (std::size_t m = 1; m <= 5; ++m) {
        const auto lo = lp::index_sets(2 * m + 1);
        const auto hi = lp::index_sets(2 * m + 2);
        EXPECT_TRUE(std::includes(hi.x.begin(), hi.x.end(), lo.x.begin(), lo.x.end()));
        EXPECT_TRUE(std::includes(hi.y.begin(), hi.y.end(), lo.y.begin(), lo.y.end()));
    }
}
