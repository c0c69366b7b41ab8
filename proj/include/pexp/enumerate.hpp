#pragma once

// Exact enumeration of a^x + b^y = c^z and small verifiers for the
// power-difference facts the elimination argument leans on.

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "pexp/modarith.hpp"

namespace pexp {

using BigInt = boost::multiprecision::cpp_int;

struct Triple {
    u64 a, b, c;

    void validate() const
    {
        if (a < 2 || b < 2 || c < 2)
            throw std::invalid_argument("triple bases must exceed 1");
        if (std::gcd(a, b) != 1 || std::gcd(a, c) != 1 || std::gcd(b, c) != 1)
            throw std::invalid_argument("triple (" + std::to_string(a) + ", " + std::to_string(b) + ", " +
                                        std::to_string(c) + ") is not pairwise coprime");
    }

    friend auto operator<=>(const Triple&, const Triple&) = default;
};

struct Solution {
    u64 x, y, z;
    friend auto operator<=>(const Solution&, const Solution&) = default;
};

enum class Parity { Even, Odd };

struct ParityClass {
    Parity x, y;
    friend auto operator<=>(const ParityClass&, const ParityClass&) = default;
};

inline ParityClass parity_class(const Solution& s)
{
    return {s.x % 2 ? Parity::Odd : Parity::Even, s.y % 2 ? Parity::Odd : Parity::Even};
}

inline std::string to_string(const ParityClass& p)
{
    auto s = [](Parity v) { return v == Parity::Even ? "even" : "odd"; };
    return std::string("(") + s(p.x) + ", " + s(p.y) + ")";
}

inline std::string to_string(const Solution& s)
{
    return "(" + std::to_string(s.x) + "," + std::to_string(s.y) + "," + std::to_string(s.z) + ")";
}

inline std::vector<BigInt> powers(u64 base, u64 bound)
{
    std::vector<BigInt> p(bound + 1);
    p[0] = 1;
    for (u64 i = 1; i <= bound; ++i)
        p[i] = p[i - 1] * base;
    return p;
}

/// All (x, y, z) with max(x, y, z) <= bound, lexicographic.
inline std::vector<Solution> find_solutions(const Triple& t, u64 bound)
{
    t.validate();
    if (bound == 0)
        throw std::invalid_argument("find_solutions: bound must be positive");
    const auto pa = powers(t.a, bound);
    const auto pb = powers(t.b, bound);
    std::vector<u64> ra(bound + 1), rb(bound + 1);
    for (u64 i = 0; i <= bound; ++i) {
        ra[i] = pow_mod(t.a, i, t.c);
        rb[i] = pow_mod(t.b, i, t.c);
    }

    std::vector<Solution> out;
    for (u64 x = 1; x <= bound; ++x) {
        for (u64 y = 1; y <= bound; ++y) {
            if ((ra[x] + rb[y]) % t.c != 0)
                continue;
            BigInt s = pa[x] + pb[y];
            u64 z = 0;
            while (z <= bound && s % t.c == 0) {
                s /= t.c;
                ++z;
            }
            if (s == 1 && z >= 1 && z <= bound)
                out.push_back({x, y, z});
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Parity classes holding two or more solutions. Requires c an odd prime.
inline std::vector<ParityClass> check_parity_uniqueness(const Triple& t, u64 bound)
{
    if (t.c % 2 == 0 || !is_prime(t.c))
        throw std::invalid_argument("check_parity_uniqueness: c must be an odd prime, got " + std::to_string(t.c));
    std::map<ParityClass, int> count;
    for (const auto& s : find_solutions(t, bound))
        ++count[parity_class(s)];
    std::vector<ParityClass> out;
    for (auto [cls, n] : count)
        if (n >= 2)
            out.push_back(cls);
    return out;
}

// Known exceptional triples with more than one solution, a < b.

struct TableEntry {
    std::string label;
    Triple triple;
    std::vector<Solution> solutions;
};

/// The thirteen exceptional families; family (i) is instantiated for r = 2..8.
inline std::vector<TableEntry> conjecture_table()
{
    std::vector<TableEntry> t;
    for (u64 r = 2; r <= 8; ++r) {
        const u64 p = u64{1} << r;
        t.push_back({"(i) r=" + std::to_string(r), {2, p - 1, p + 1}, {{1, 1, 1}, {r + 2, 2, 2}}});
    }
    t.push_back({"(ii)", {2, 3, 11}, {{1, 2, 1}, {3, 1, 1}}});
    t.push_back({"(iii)", {2, 3, 35}, {{3, 3, 1}, {5, 1, 1}}});
    t.push_back({"(iv)", {2, 3, 259}, {{4, 5, 1}, {8, 1, 1}}});
    t.push_back({"(v)", {2, 5, 3}, {{1, 2, 3}, {2, 1, 2}}});
    t.push_back({"(vi)", {2, 5, 133}, {{3, 3, 1}, {7, 1, 1}}});
    t.push_back({"(vii)", {2, 7, 3}, {{1, 1, 2}, {5, 2, 4}}});
    t.push_back({"(viii)", {2, 89, 91}, {{1, 1, 1}, {13, 1, 2}}});
    t.push_back({"(ix)", {2, 91, 8283}, {{1, 2, 1}, {13, 1, 1}}});
    t.push_back({"(x)", {3, 5, 2}, {{1, 1, 3}, {1, 3, 7}, {3, 1, 5}}});
    t.push_back({"(xi)", {3, 10, 13}, {{1, 1, 1}, {7, 1, 3}}});
    t.push_back({"(xii)", {3, 13, 2}, {{1, 1, 4}, {5, 1, 8}}});
    t.push_back({"(xiii)", {3, 13, 2200}, {{1, 3, 1}, {7, 1, 1}}});
    return t;
}

/// The six prime triples (a < b) known to have more than one solution.
inline std::vector<TableEntry> prime_exceptions()
{
    return {
        {"(i)", {2, 3, 5}, {{1, 1, 1}, {4, 2, 2}}},
        {"(ii)", {2, 3, 11}, {{1, 2, 1}, {3, 1, 1}}},
        {"(iii)", {2, 5, 3}, {{1, 2, 3}, {2, 1, 2}}},
        {"(iv)", {2, 7, 3}, {{1, 1, 2}, {5, 2, 4}}},
        {"(v)", {3, 5, 2}, {{1, 1, 3}, {1, 3, 7}, {3, 1, 5}}},
        {"(vi)", {3, 13, 2}, {{1, 1, 4}, {5, 1, 8}}},
    };
}

struct TableCheck {
    TableEntry entry;
    std::vector<Solution> found;
    bool match() const { return found == entry.solutions; }
};

inline std::vector<TableCheck> verify_conjecture_table(u64 bound)
{
    if (bound < 16)
        throw std::invalid_argument("verify_conjecture_table: bound must be >= 16");
    std::vector<TableCheck> out;
    for (auto& e : conjecture_table())
        out.push_back({e, find_solutions(e.triple, bound)});
    return out;
}

/// Prime triples a < b, c distinct, every base below `limit`, with two or
/// more solutions up to `bound`.
inline std::vector<std::pair<Triple, std::vector<Solution>>> multi_solution_prime_triples(u64 limit, u64 bound)
{
    std::vector<u64> primes;
    for (u64 p = 2; p < limit; ++p)
        if (is_prime(p))
            primes.push_back(p);
    std::vector<std::pair<Triple, std::vector<Solution>>> out;
    for (std::size_t i = 0; i < primes.size(); ++i)
        for (std::size_t j = i + 1; j < primes.size(); ++j)
            for (u64 c : primes) {
                if (c == primes[i] || c == primes[j])
                    continue;
                const Triple t{primes[i], primes[j], c};
                auto sols = find_solutions(t, bound);
                if (sols.size() >= 2)
                    out.emplace_back(t, std::move(sols));
            }
    std::sort(out.begin(), out.end());
    return out;
}

/// All d with 3^m - 2^n = 3^x - 2^y = d, m != x, exponents in [1, exp_bound].
inline std::set<BigInt> pillai_collisions(u64 exp_bound)
{
    const auto p3 = powers(3, exp_bound);
    const auto p2 = powers(2, exp_bound);
    std::map<BigInt, std::set<u64>> by_value;
    for (u64 m = 1; m <= exp_bound; ++m)
        for (u64 n = 1; n <= exp_bound; ++n)
            by_value[p3[m] - p2[n]].insert(m);
    std::set<BigInt> out;
    for (const auto& [d, ms] : by_value)
        if (ms.size() >= 2)
            out.insert(d);
    return out;
}

struct GapPair {
    u64 x, n;
    friend auto operator<=>(const GapPair&, const GapPair&) = default;
};

/// Odd X <= x_bound, 1 < n <= n_bound with |X^2 - 2^n| <= 2^(0.26 n).
/// Compared exactly as |X^2 - 2^n|^50 <= 2^(13 n).
inline std::vector<GapPair> gap_lemma_exceptions(u64 x_bound, u64 n_bound)
{
    std::vector<GapPair> out;
    for (u64 n = 2; n <= n_bound; ++n) {
        const BigInt p2 = BigInt(1) << n;
        const BigInt rhs = BigInt(1) << (13 * n);
        for (u64 x = 1; x <= x_bound; x += 2) {
            BigInt d = BigInt(x) * x - p2;
            if (d < 0)
                d = -d;
            if (boost::multiprecision::pow(d, 50) <= rhs)
                out.push_back({x, n});
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline BigInt gap_value(const GapPair& g)
{
    return BigInt(g.x) * g.x - (BigInt(1) << g.n);
}

/// Pairs (z, y) <= exp_bound with 0 < |c^z - b^y| < max(c^(z/2), b^(y/2)) / 4,
/// tested as 16 (c^z - b^y)^2 < max(c^z, b^y).
inline u64 bennett_pair_count(u64 c, u64 b, u64 exp_bound)
{
    if (c < 2 || b < 2)
        throw std::invalid_argument("bennett_pair_count: bases must be >= 2");
    const auto pc = powers(c, exp_bound);
    const auto pb = powers(b, exp_bound);
    u64 count = 0;
    for (u64 z = 1; z <= exp_bound; ++z)
        for (u64 y = 1; y <= exp_bound; ++y) {
            const BigInt d = pc[z] - pb[y];
            if (d == 0)
                continue;
            if (16 * d * d < std::max(pc[z], pb[y]))
                ++count;
        }
    return count;
}

} // namespace pexp
