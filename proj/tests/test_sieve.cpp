#include <gtest/gtest.h>

#include "pexp/survivor.hpp"
#include "properties.hpp"

using namespace pexp;

TEST(CaseSplit, ByResidueMod24)
{
    const auto c13 = case_split(13);
    ASSERT_EQ(c13.size(), 2u);
    EXPECT_EQ(c13[0].label(), "(13,5)");
    EXPECT_EQ(c13[0].forced_x1(), std::optional<u64>{2});
    EXPECT_FALSE(c13[0].forced_x2());
    EXPECT_EQ(c13[1].label(), "(13,17)");
    EXPECT_EQ(c13[1].forced_x2(), std::optional<u64>{2});
    EXPECT_FALSE(c13[1].forced_x1());

    const auto c73 = case_split(73);
    ASSERT_EQ(c73.size(), 1u);
    EXPECT_EQ(c73[0].label(), "(1,17)");
    EXPECT_EQ(c73[0].arity(), 4u);
    EXPECT_EQ(c13[0].arity(), 3u);

    EXPECT_THROW(case_split(7), std::invalid_argument);
    EXPECT_THROW(case_split(25), std::invalid_argument);
    EXPECT_THROW(case_split(17), std::invalid_argument);
    EXPECT_THROW(CaseSplit::make(1, 5), std::invalid_argument);
}

TEST(CaseSplit, Mod24OfC)
{
    EXPECT_EQ(c_mod24_from_x1(2), 5u);
    for (u64 x = 4; x < 40; x += 2)
        EXPECT_EQ(c_mod24_from_x1(x), 17u);
    EXPECT_THROW(c_mod24_from_x1(3), std::invalid_argument);
    // direct: 2^x + 13^y mod 24 for even y
    for (u64 x = 2; x < 20; x += 2)
        for (u64 y = 2; y < 10; y += 2)
            EXPECT_EQ((pow_mod(2, x, 24) + pow_mod(13, y, 24)) % 24, c_mod24_from_x1(x));
}

TEST(LocalCandidates, Example)
{
    const auto cs = CaseSplit::make(13, 5);
    const auto s = local_candidates(13, 3, cs, 5);
    EXPECT_EQ(s.modulus, 4u);
    EXPECT_EQ(s.arity, 3u);
    ASSERT_EQ(s.size(), 1u);
    EXPECT_EQ(s.tuples[0], (Tuple{2, 2, 1, 0}));
    EXPECT_FALSE(s.contains({0, 2, 1, 0})); // y1 == 0 mod 4 forces c == 0 mod 5
}

TEST(LocalCandidates, RejectsModuliSharingAFactorWith2b)
{
    const auto cs = CaseSplit::make(13, 5);
    EXPECT_THROW(local_candidates(13, 3, cs, 13), std::invalid_argument);
    EXPECT_THROW(local_candidates(13, 3, cs, 4), std::invalid_argument);
}

TEST(LocalCandidates, MatchesExhaustiveEnumeration)
{
    for (u64 b : {13u, 37u, 61u, 73u, 97u, 109u})
        for (u64 z2 : {3u, 5u})
            for (const auto& cs : case_split(b))
                for (u64 q : {5u, 7u, 9u, 11u, 13u, 17u}) {
                    if (std::gcd(q, b) != 1)
                        continue;
                    const auto got = local_candidates(b, z2, cs, q);
                    const auto want = props::brute_local(b, z2, cs, q);
                    ASSERT_EQ(std::set<Tuple>(got.tuples.begin(), got.tuples.end()), want)
                        << "b=" << b << " z2=" << z2 << " " << cs.label() << " q=" << q;
                }
}

TEST(LocalCandidates, ContainsRandomWitnesses)
{
    const auto r = props::witness_soundness(10'000, 1);
    EXPECT_EQ(r.checked, 10'000u);
    EXPECT_EQ(r.violations, 0u) << r.first_violation;
}

TEST(Intersect, MatchesBruteForceCrt)
{
    const auto r = props::intersect_matches_crt(5);
    EXPECT_GT(r.pairs, 576u);
    EXPECT_EQ(r.violations, 0u) << r.first_violation;
}

TEST(Intersect, Examples)
{
    CandidateSet a{4, 1, {{1}, {3}}};
    CandidateSet b{6, 1, {{5}}};
    const auto c = intersect(a, b);
    EXPECT_EQ(c.modulus, 12u);
    EXPECT_EQ(c.tuples, (std::vector<Tuple>{{5}, {11}}));
    CandidateSet even{2, 1, {{0}}};
    EXPECT_TRUE(intersect(even, b).empty());
    EXPECT_THROW(intersect(a, CandidateSet{4, 2, {}}), std::invalid_argument);
}

TEST(DefaultPlan, Order)
{
    const auto p13 = default_plan(13);
    EXPECT_EQ(p13, (std::vector<u64>{5, 7, 13, 9, 11}));
    EXPECT_EQ(default_plan(5), std::vector<u64>{5});
    EXPECT_THROW(default_plan(4), std::invalid_argument);

    const auto p = default_plan(241);
    EXPECT_GE(p.size(), 50u);
    EXPECT_TRUE(std::find(p.begin(), p.end(), 241) != p.end());
    for (u64 q : p) {
        EXPECT_TRUE(prime_power_base(q).has_value()) << q;
        EXPECT_EQ(q % 2, 1u);
        EXPECT_GE(q, 5u);
    }
    EXPECT_EQ(std::set<u64>(p.begin(), p.end()).size(), p.size());
}

TEST(SieveStep, LiftFilterEqualsIntersectChain)
{
    for (u64 b : {37u, 61u, 73u})
        for (const auto& cs : case_split(b)) {
            const auto plan = default_plan(29);
            const auto slots = cs.free_slots();
            CandidateSet lifted{2, cs.arity(), {}};
            Tuple parity{};
            for (std::size_t i = 0; i < slots.size(); ++i)
                parity[i] = slot_parity[static_cast<unsigned>(slots[i])];
            lifted.tuples.push_back(parity);
            CandidateSet joined = lifted;
            for (u64 q : plan) {
                if (std::gcd(q, b) != 1)
                    continue;
                const ModulusContext ctx(b, 3, q);
                SieveOptions opt;
                opt.work_cap = 1'000'000'000;
                opt.candidate_cap = 100'000'000;
                auto next = sieve_step(lifted, cs, ctx, opt);
                ASSERT_TRUE(next);
                lifted = *next;
                joined = intersect(joined, local_candidates(b, 3, cs, q));
                ASSERT_EQ(lifted.modulus, joined.modulus);
                ASSERT_EQ(lifted.tuples, joined.tuples) << "b=" << b << " " << cs.label() << " q=" << q;
                if (lifted.size() > 20'000)
                    break;
            }
        }
}

TEST(SieveStep, CapsDefer)
{
    const auto cs = CaseSplit::make(1, 17);
    CandidateSet s{2, 4, {{0, 0, 0, 1}}};
    SieveOptions opt;
    opt.work_cap = 10;
    EXPECT_FALSE(sieve_step(s, cs, ModulusContext(73, 3, 11), opt));
}

TEST(EliminateB, Thirteen)
{
    const auto plan = default_plan(241);
    const auto certs = eliminate_b(13, plan);
    ASSERT_EQ(certs.size(), 2u); // h(-52) = 2: no admissible z2
    EXPECT_EQ(expected_certificate_count(13), 2u);
    for (const auto& c : certs) {
        EXPECT_EQ(c.outcome, Outcome::Eliminated);
        EXPECT_FALSE(c.z2);
        EXPECT_EQ(c.moduli_used, 0u);
    }
    EXPECT_THROW(eliminate_b(7, plan), std::invalid_argument);
    EXPECT_THROW(eliminate_b(25, plan), std::invalid_argument);
}

TEST(EliminateB, ExponentZeroIdentitySurvives)
{
    // 2^2 + 61^0 = 5 and 2^6 + 61 = 5^3
    const auto plan = default_plan(241);
    const auto runs = eliminate_b_runs(61, plan);
    ASSERT_EQ(runs.size(), 2u);
    const auto& r = runs[0];
    EXPECT_EQ(r.certificate.split.label(), "(13,5)");
    EXPECT_EQ(r.certificate.z2, std::optional<u64>{3});
    EXPECT_EQ(r.certificate.outcome, Outcome::Survived);
    EXPECT_EQ(r.certificate.moduli_used, 14u);
    const auto id = find_exponent_zero_identity(61, r.certificate.split, 3, r.survivors, 64);
    ASSERT_TRUE(id);
    EXPECT_EQ(id->x2, 6u);
    EXPECT_EQ(id->y2, 1u);
    EXPECT_EQ(id->c0, 5u);
    EXPECT_EQ(runs[1].certificate.outcome, Outcome::Eliminated);
}

TEST(EliminateB, CertificatesAreConsistent)
{
    const auto plan = default_plan(241);
    for (u64 b : props::test_bases()) {
        const auto certs = eliminate_b(b, plan);
        ASSERT_EQ(certs.size(), expected_certificate_count(b));
        for (const auto& c : certs) {
            ASSERT_EQ(c.moduli_used, c.steps.size());
            ASSERT_LE(c.moduli_used, 14u);
            ASSERT_EQ(c.outcome == Outcome::Eliminated, c.steps.empty() || c.steps.back().surviving == 0);
            // surviving density never increases
            u64 L = 2;
            double density = 1.0 / std::pow(2.0, c.split.arity());
            for (const auto& s : c.steps) {
                ASSERT_EQ(std::gcd(s.modulus, 2 * b), 1u);
                L = std::lcm(L, ModulusContext(b, *c.z2, s.modulus).exponent_modulus());
                const double d = static_cast<double>(s.surviving) / std::pow(static_cast<double>(L), c.split.arity());
                ASSERT_LE(d, density * (1 + 1e-12));
                density = d;
            }
        }
    }
}

TEST(EliminateB, Deterministic)
{
    const auto plan = default_plan(241);
    for (u64 b : {61u, 97u, 109u, 1093u})
        EXPECT_EQ(eliminate_b(b, plan), eliminate_b(b, plan));
}
