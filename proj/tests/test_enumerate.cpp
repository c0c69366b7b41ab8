#include <gtest/gtest.h>

#include <random>

#include "pexp/enumerate.hpp"

using namespace pexp;

using Sols = std::vector<Solution>;

TEST(FindSolutions, ExceptionalTriples)
{
    EXPECT_EQ(find_solutions({2, 3, 5}, 10), (Sols{{1, 1, 1}, {4, 2, 2}}));
    EXPECT_EQ(find_solutions({3, 5, 2}, 10), (Sols{{1, 1, 3}, {1, 3, 7}, {3, 1, 5}}));
    EXPECT_EQ(find_solutions({2, 89, 91}, 15), (Sols{{1, 1, 1}, {13, 1, 2}}));
}

TEST(FindSolutions, BoundIsRespected)
{
    // (13,1,2) needs x = 13
    EXPECT_EQ(find_solutions({2, 89, 91}, 12), (Sols{{1, 1, 1}}));
    EXPECT_TRUE(find_solutions({2, 3, 7}, 1).empty());
}

TEST(FindSolutions, RejectsInvalidTriples)
{
    EXPECT_THROW(find_solutions({2, 4, 5}, 10), std::invalid_argument);
    EXPECT_THROW(find_solutions({1, 3, 5}, 10), std::invalid_argument);
}

TEST(FindSolutions, EverySolutionIsExact)
{
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<u64> d(2, 60);
    for (int i = 0; i < 200; ++i) {
        const Triple t{d(rng), d(rng), d(rng)};
        if (std::gcd(t.a, t.b) != 1 || std::gcd(t.a, t.c) != 1 || std::gcd(t.b, t.c) != 1)
            continue;
        for (const auto& s : find_solutions(t, 20)) {
            using boost::multiprecision::pow;
            ASSERT_EQ(pow(BigInt(t.a), s.x) + pow(BigInt(t.b), s.y), pow(BigInt(t.c), s.z));
        }
    }
}

TEST(ParityClass, Examples)
{
    EXPECT_EQ(parity_class({4, 2, 2}), (ParityClass{Parity::Even, Parity::Even}));
    EXPECT_EQ(parity_class({1, 1, 1}), (ParityClass{Parity::Odd, Parity::Odd}));
    EXPECT_EQ(parity_class({13, 1, 2}), (ParityClass{Parity::Odd, Parity::Odd}));
}

TEST(ParityUniqueness, Examples)
{
    EXPECT_TRUE(check_parity_uniqueness({2, 3, 5}, 20).empty());
    EXPECT_EQ(check_parity_uniqueness({3, 10, 13}, 20), (std::vector<ParityClass>{{Parity::Odd, Parity::Odd}}));
    EXPECT_EQ(check_parity_uniqueness({10, 3, 13}, 20), (std::vector<ParityClass>{{Parity::Odd, Parity::Odd}}));
    EXPECT_TRUE(check_parity_uniqueness({2, 7, 3}, 20).empty());
    EXPECT_THROW(check_parity_uniqueness({3, 5, 2}, 20), std::invalid_argument);
    EXPECT_THROW(check_parity_uniqueness({2, 7, 9}, 20), std::invalid_argument);
}

TEST(ExceptionTable, Entries)
{
    const auto checks = verify_conjecture_table(16);
    ASSERT_EQ(checks.size(), 19u); // family (i) for r = 2..8 plus twelve single entries
    for (const auto& c : checks)
        EXPECT_TRUE(c.match()) << c.entry.label;
    auto find = [&](const std::string& label) {
        for (const auto& c : checks)
            if (c.entry.label == label)
                return c.found;
        return Sols{};
    };
    EXPECT_EQ(find("(xiii)"), (Sols{{1, 3, 1}, {7, 1, 1}}));
    EXPECT_EQ(find("(v)"), (Sols{{1, 2, 3}, {2, 1, 2}}));
    EXPECT_EQ(find("(i) r=2"), (Sols{{1, 1, 1}, {4, 2, 2}}));
    EXPECT_THROW(verify_conjecture_table(15), std::invalid_argument);
}

TEST(MultiSolutionPrimeTriples, OnlyTheSixKnownBelow100)
{
    const auto found = multi_solution_prime_triples(100, 40);
    std::vector<Triple> triples;
    for (const auto& [t, s] : found)
        triples.push_back(t);
    EXPECT_EQ(triples, (std::vector<Triple>{{2, 3, 5}, {2, 3, 11}, {2, 5, 3}, {2, 7, 3}, {3, 5, 2}, {3, 13, 2}}));
}

TEST(PillaiCollisions, Examples)
{
    EXPECT_EQ(pillai_collisions(40), (std::set<BigInt>{1, -5, -13}));
    EXPECT_EQ(pillai_collisions(3), (std::set<BigInt>{1}));
    EXPECT_EQ(pillai_collisions(10), (std::set<BigInt>{1, -5, -13}));
}

TEST(PillaiCollisions, MonotoneAndStable)
{
    std::set<BigInt> prev;
    for (u64 e = 1; e <= 30; ++e) {
        const auto cur = pillai_collisions(e);
        ASSERT_TRUE(std::includes(cur.begin(), cur.end(), prev.begin(), prev.end())) << e;
        if (e >= 8) {
            ASSERT_EQ(cur, (std::set<BigInt>{1, -5, -13})) << e;
        }
        prev = cur;
    }
}

TEST(GapPairs, Exceptions)
{
    const auto g = gap_lemma_exceptions(100, 20);
    EXPECT_TRUE(std::find(g.begin(), g.end(), GapPair{3, 3}) != g.end());
    // 25 - 32 = -7 but 7 > 2^1.3, so (5, 5) is not a close pair
    EXPECT_TRUE(std::find(g.begin(), g.end(), GapPair{5, 5}) == g.end());
    EXPECT_TRUE(std::find(g.begin(), g.end(), GapPair{5, 4}) == g.end());
    // 181^2 - 2^15 = -7 <= 2^3.9
    const auto wide = gap_lemma_exceptions(200, 20);
    EXPECT_TRUE(std::find(wide.begin(), wide.end(), GapPair{181, 15}) != wide.end());
    for (const auto& p : gap_lemma_exceptions(1000, 40)) {
        const BigInt v = gap_value(p);
        EXPECT_TRUE(v == 1 || v == -7) << p.x << "," << p.n;
    }
}

TEST(GapPairs, ExactThresholdAgreesWithFloatingPointAwayFromTies)
{
    for (u64 n = 2; n <= 30; ++n)
        for (u64 x = 1; x <= 99; x += 2) {
            const double diff = std::abs(static_cast<double>(x * x) - std::ldexp(1.0, static_cast<int>(n)));
            const double bound = std::pow(2.0, 0.26 * static_cast<double>(n));
            if (std::abs(diff - bound) < 1e-6)
                continue;
            const auto g = gap_lemma_exceptions(x, n);
            const bool listed = std::find(g.begin(), g.end(), GapPair{x, n}) != g.end();
            ASSERT_EQ(listed, diff <= bound) << x << "," << n;
        }
}

TEST(BennettPairs, Examples)
{
    EXPECT_LE(bennett_pair_count(5, 3, 10), 1u);
    EXPECT_EQ(bennett_pair_count(5, 3, 10), 0u);
    EXPECT_EQ(bennett_pair_count(2, 2, 10), 0u);
    EXPECT_EQ(bennett_pair_count(91, 2, 14), 0u);
    // 1025 - 2^10 = 1 is close; nothing else is
    EXPECT_EQ(bennett_pair_count(1025, 2, 40), 1u);
    EXPECT_EQ(bennett_pair_count(17, 4, 40), 1u);
}

TEST(BennettPairs, NeverMoreThanOne)
{
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<u64> d(2, 300);
    for (int i = 0; i < 200; ++i)
        ASSERT_LE(bennett_pair_count(d(rng), d(rng), 25), 1u);
}
