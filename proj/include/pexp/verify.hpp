#pragma once

// The desk-scale verification suite behind `pexp verify`.

#include <map>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "pexp/enumerate.hpp"

namespace pexp {

struct VerifyReport {
    u64 exponent_bound = 0;
    u64 families_matched = 0;
    u64 families_total = 0;
    bool table_ok = false;
    std::vector<std::string> table_mismatches;

    std::vector<std::pair<Triple, std::vector<Solution>>> multi_solution_triples;
    bool prime_triples_ok = false;

    std::vector<std::pair<Triple, std::vector<ParityClass>>> parity_violations;
    bool parity_ok = false;

    std::set<BigInt> pillai;
    bool pillai_ok = false;

    std::vector<GapPair> gap_pairs;
    bool gap_ok = false;

    bool ok() const { return table_ok && prime_triples_ok && parity_ok && pillai_ok && gap_ok; }
};

namespace detail {

inline std::string family_of(const std::string& label)
{
    return label.substr(0, label.find(' '));
}

inline std::string solutions_string(const std::vector<Solution>& s)
{
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i)
        out += (i ? ", " : "") + to_string(s[i]);
    return out + "}";
}

} // namespace detail

inline VerifyReport run_verify(u64 exponent_bound)
{
    if (exponent_bound < 16)
        throw std::invalid_argument("verify: exponent bound must be at least 16");
    VerifyReport r;
    r.exponent_bound = exponent_bound;

    std::map<std::string, bool> family_ok;
    for (const auto& check : verify_conjecture_table(exponent_bound)) {
        const auto fam = detail::family_of(check.entry.label);
        family_ok.try_emplace(fam, true);
        if (!check.match()) {
            family_ok[fam] = false;
            const auto& t = check.entry.triple;
            r.table_mismatches.push_back(check.entry.label + " (" + std::to_string(t.a) + "," + std::to_string(t.b) +
                                         "," + std::to_string(t.c) + "): expected " +
                                         detail::solutions_string(check.entry.solutions) + ", found " +
                                         detail::solutions_string(check.found));
        }
    }
    r.families_total = family_ok.size();
    for (auto [f, ok] : family_ok)
        r.families_matched += ok;
    r.table_ok = r.families_matched == r.families_total;

    // one enumeration pass feeds both the multi-solution and parity checks
    std::vector<u64> primes;
    for (u64 p = 2; p < 100; ++p)
        if (is_prime(p))
            primes.push_back(p);
    for (std::size_t i = 0; i < primes.size(); ++i)
        for (std::size_t j = i + 1; j < primes.size(); ++j)
            for (u64 c : primes) {
                if (c == primes[i] || c == primes[j])
                    continue;
                const Triple t{primes[i], primes[j], c};
                const auto sols = find_solutions(t, exponent_bound);
                if (sols.size() >= 2)
                    r.multi_solution_triples.emplace_back(t, sols);
                if (c % 2 == 1) {
                    std::map<ParityClass, int> per_class;
                    for (const auto& s : sols)
                        ++per_class[parity_class(s)];
                    std::vector<ParityClass> bad;
                    for (auto [cls, n] : per_class)
                        if (n >= 2)
                            bad.push_back(cls);
                    if (!bad.empty())
                        r.parity_violations.emplace_back(t, bad);
                }
            }
    std::sort(r.multi_solution_triples.begin(), r.multi_solution_triples.end());
    std::vector<std::pair<Triple, std::vector<Solution>>> expected;
    for (const auto& e : prime_exceptions())
        expected.emplace_back(e.triple, e.solutions);
    std::sort(expected.begin(), expected.end());
    r.prime_triples_ok = r.multi_solution_triples == expected;

    // the known composite exception must show up, in both orders
    const std::vector<ParityClass> odd_odd{{Parity::Odd, Parity::Odd}};
    const bool exception_seen = check_parity_uniqueness({3, 10, 13}, exponent_bound) == odd_odd &&
                                check_parity_uniqueness({10, 3, 13}, exponent_bound) == odd_odd;
    r.parity_ok = r.parity_violations.empty() && exception_seen;

    r.pillai = pillai_collisions(exponent_bound);
    r.pillai_ok = r.pillai == std::set<BigInt>{1, -5, -13};

    r.gap_pairs = gap_lemma_exceptions(100, 30);
    r.gap_ok = std::all_of(r.gap_pairs.begin(), r.gap_pairs.end(), [](const GapPair& g) {
        const BigInt v = gap_value(g);
        return v == 1 || v == -7;
    });
    return r;
}

inline void print_verify(const VerifyReport& r, std::ostream& os)
{
    auto mark = [](bool ok) { return ok ? "ok  " : "FAIL"; };
    os << mark(r.table_ok) << " exception table: " << r.families_matched << "/" << r.families_total
       << " entries match (exponent bound " << r.exponent_bound << ")\n";
    for (const auto& m : r.table_mismatches)
        os << "     mismatch " << m << "\n";
    os << mark(r.prime_triples_ok) << " prime triples below 100 with >= 2 solutions: "
       << r.multi_solution_triples.size() << "\n";
    for (const auto& [t, s] : r.multi_solution_triples)
        os << "     (" << t.a << "," << t.b << "," << t.c << ") " << detail::solutions_string(s) << "\n";
    os << mark(r.parity_ok) << " parity classes hold at most one solution (odd prime c < 100); violations: "
       << r.parity_violations.size() << "\n";
    for (const auto& [t, cls] : r.parity_violations)
        os << "     (" << t.a << "," << t.b << "," << t.c << ") class " << to_string(cls.front()) << "\n";
    os << mark(r.pillai_ok) << " 3^m - 2^n collisions: {";
    bool first = true;
    for (const auto& d : r.pillai) {
        os << (first ? "" : ", ") << d;
        first = false;
    }
    os << "}\n";
    os << mark(r.gap_ok) << " |X^2 - 2^n| <= 2^(0.26n) pairs (X <= 100, n <= 30):";
    for (const auto& g : r.gap_pairs)
        os << " (" << g.x << "," << g.n << ")=" << gap_value(g);
    os << "\n";
}

} // namespace pexp
