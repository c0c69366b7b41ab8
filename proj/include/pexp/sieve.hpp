#pragma once

// Modular elimination of a second solution for a = 2.
//
// A counterexample would be a prime b == 1 mod 12 together with
//
//     2^x1 + b^y1 = c,          x1, y1 even
//     2^x2 + b^y2 = c^z2,       x2 even, y2 odd, z2 odd > 1, z2 | h(-4b)
//
// For each sieve modulus q coprime to 2b the exponents only matter modulo the
// orders of 2 and b mod q, so the unknown exponents become residue tuples.
// The engine keeps one set of tuples modulo a growing common modulus L and
// intersects in the tuples allowed by each new q. An empty set proves that
// (b, case, z2) has no solution.

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "pexp/classnum.hpp"
#include "pexp/modarith.hpp"

namespace pexp {

enum class Slot : unsigned { X1 = 0, Y1 = 1, X2 = 2, Y2 = 3 };

/// Required parity of each exponent: x1, y1, x2 even; y2 odd.
inline constexpr std::array<u64, 4> slot_parity{0, 0, 0, 1};

/// Branch (b mod 24, c mod 24) and the exponent it pins to 2.
class CaseSplit {
public:
    static CaseSplit make(unsigned b_res24, unsigned c_res24)
    {
        if (b_res24 == 13 && c_res24 == 5)
            return CaseSplit(13, 5, 2, std::nullopt);
        if (b_res24 == 13 && c_res24 == 17)
            return CaseSplit(13, 17, std::nullopt, 2);
        if (b_res24 == 1 && c_res24 == 17)
            return CaseSplit(1, 17, std::nullopt, std::nullopt);
        throw std::invalid_argument("no case split for (b, c) == (" + std::to_string(b_res24) + ", " +
                                    std::to_string(c_res24) + ") mod 24");
    }

    unsigned b_res24() const { return b_res24_; }
    unsigned c_res24() const { return c_res24_; }
    std::optional<u64> forced_x1() const { return forced_x1_; }
    std::optional<u64> forced_x2() const { return forced_x2_; }

    /// Exponents carried as residues, in (x1, y1, x2, y2) order.
    std::vector<Slot> free_slots() const
    {
        std::vector<Slot> s;
        if (!forced_x1_)
            s.push_back(Slot::X1);
        s.push_back(Slot::Y1);
        if (!forced_x2_)
            s.push_back(Slot::X2);
        s.push_back(Slot::Y2);
        return s;
    }

    unsigned arity() const { return static_cast<unsigned>(free_slots().size()); }

    std::string label() const { return "(" + std::to_string(b_res24_) + "," + std::to_string(c_res24_) + ")"; }

    friend bool operator==(const CaseSplit&, const CaseSplit&) = default;

private:
    CaseSplit(unsigned b24, unsigned c24, std::optional<u64> x1, std::optional<u64> x2)
        : b_res24_(b24), c_res24_(c24), forced_x1_(x1), forced_x2_(x2)
    {
    }

    unsigned b_res24_;
    unsigned c_res24_;
    std::optional<u64> forced_x1_;
    std::optional<u64> forced_x2_;
};

inline std::vector<CaseSplit> case_split(u64 b)
{
    if (!is_prime(b))
        throw std::invalid_argument("case_split: " + std::to_string(b) + " is not prime");
    if (b % 12 != 1)
        throw std::invalid_argument("case_split: " + std::to_string(b) + " is not 1 mod 12");
    if (b % 24 == 13)
        return {CaseSplit::make(13, 5), CaseSplit::make(13, 17)};
    return {CaseSplit::make(1, 17)};
}

/// c mod 24 implied by 2^x1 + b^y1 with y1 even, b == 1 mod 12.
inline unsigned c_mod24_from_x1(u64 x1)
{
    if (x1 % 2 != 0 || x1 == 0)
        throw std::invalid_argument("c_mod24_from_x1: x1 must be even and positive");
    // b^y1 == 1 mod 24; 2^2 == 4, 2^x == 16 mod 24 for even x >= 4
    return x1 == 2 ? 5 : 17;
}

/// Whether an x1 residue class can give c == case.c_res24 mod 24. A free x1
/// class mod an even modulus always holds even exponents >= 4 (c == 17).
inline bool x1_class_matches_case(const CaseSplit& cs)
{
    if (cs.forced_x1())
        return c_mod24_from_x1(*cs.forced_x1()) == cs.c_res24();
    return cs.c_res24() == 17;
}

using Tuple = std::array<u64, 4>;

/// Tuples of free-exponent residues sharing one modulus.
struct CandidateSet {
    u64 modulus = 2;
    unsigned arity = 0;
    std::vector<Tuple> tuples; // sorted, unique; slots >= arity are zero

    std::size_t size() const { return tuples.size(); }
    bool empty() const { return tuples.empty(); }

    void normalize()
    {
        std::sort(tuples.begin(), tuples.end());
        tuples.erase(std::unique(tuples.begin(), tuples.end()), tuples.end());
    }

    bool contains(const Tuple& t) const
    {
        Tuple r{};
        for (unsigned i = 0; i < arity; ++i)
            r[i] = t[i] % modulus;
        return std::binary_search(tuples.begin(), tuples.end(), r);
    }

    friend bool operator==(const CandidateSet&, const CandidateSet&) = default;
};

/// Every tuple mod an even L with the parities required of each free slot.
inline CandidateSet full_parity_set(const CaseSplit& cs, u64 modulus)
{
    if (modulus == 0 || modulus % 2 != 0)
        throw std::invalid_argument("full_parity_set: modulus must be even");
    const auto slots = cs.free_slots();
    CandidateSet out{modulus, static_cast<unsigned>(slots.size()), {}};
    const u64 half = modulus / 2;
    u64 total = 1;
    for (std::size_t i = 0; i < slots.size(); ++i)
        total *= half;
    out.tuples.reserve(total);
    for (u64 idx = 0; idx < total; ++idx) {
        Tuple t{};
        u64 rest = idx;
        for (std::size_t i = slots.size(); i-- > 0;) {
            t[i] = 2 * (rest % half) + slot_parity[static_cast<unsigned>(slots[i])];
            rest /= half;
        }
        out.tuples.push_back(t);
    }
    out.normalize();
    return out;
}

/// Per-modulus tables for evaluating both congruences mod q.
class ModulusContext {
public:
    ModulusContext(u64 b, u64 z2, u64 q) : q_(q)
    {
        if (q < 3 || std::gcd(q, 2 * b) != 1)
            throw std::invalid_argument("sieve modulus " + std::to_string(q) + " shares a factor with 2b = " +
                                        std::to_string(2 * b));
        ord2_ = multiplicative_order(2, q);
        ordb_ = multiplicative_order(b % q, q);
        exponent_modulus_ = lcm_checked(lcm_checked(ord2_, ordb_), 2);
        pow2_.resize(ord2_);
        powb_.resize(ordb_);
        for (u64 i = 0, v = 1; i < ord2_; ++i, v = mul_mod(v, 2, q))
            pow2_[i] = v;
        for (u64 i = 0, v = 1; i < ordb_; ++i, v = mul_mod(v, b % q, q))
            powb_[i] = v;
        cz_.resize(q);
        for (u64 c = 0; c < q; ++c)
            cz_[c] = pow_mod(c, z2, q);
    }

    u64 q() const { return q_; }
    u64 exponent_modulus() const { return exponent_modulus_; }

    u64 two_to(u64 e) const { return pow2_[e % ord2_]; }
    u64 b_to(u64 e) const { return powb_[e % ordb_]; }
    u64 c_to_z2(u64 c) const { return cz_[c]; }

    /// Both congruences hold mod q for the full exponent vector (x1, y1, x2, y2).
    bool admits(u64 x1, u64 y1, u64 x2, u64 y2) const
    {
        const u64 c = (two_to(x1) + b_to(y1)) % q_;
        return (two_to(x2) + b_to(y2)) % q_ == c_to_z2(c);
    }

private:
    u64 q_;
    u64 ord2_ = 1, ordb_ = 1, exponent_modulus_ = 2;
    std::vector<u64> pow2_, powb_, cz_;
};

/// Expands free residues into (x1, y1, x2, y2) using the case's forced values.
inline Tuple full_exponents(const CaseSplit& cs, const Tuple& free)
{
    Tuple e{};
    unsigned k = 0;
    e[0] = cs.forced_x1() ? *cs.forced_x1() : free[k++];
    e[1] = free[k++];
    e[2] = cs.forced_x2() ? *cs.forced_x2() : free[k++];
    e[3] = free[k++];
    return e;
}

/// All parity-valid free-exponent tuples mod L_q satisfying both congruences mod q.
inline CandidateSet local_candidates(u64 b, u64 z2, const CaseSplit& cs, u64 q)
{
    const ModulusContext ctx(b, z2, q);
    const u64 L = ctx.exponent_modulus();
    const u64 half = L / 2;
    const auto slots = cs.free_slots();
    CandidateSet out{L, static_cast<unsigned>(slots.size()), {}};

    // left side of the second equation, bucketed by value mod q
    std::vector<std::vector<std::pair<u64, u64>>> by_value(q);
    const std::vector<u64> x2_values = cs.forced_x2() ? std::vector<u64>{*cs.forced_x2()} : [&] {
        std::vector<u64> v;
        for (u64 i = 0; i < half; ++i)
            v.push_back(2 * i);
        return v;
    }();
    for (u64 x2 : x2_values)
        for (u64 j = 0; j < half; ++j) {
            const u64 y2 = 2 * j + 1;
            by_value[(ctx.two_to(x2) + ctx.b_to(y2)) % q].emplace_back(x2, y2);
        }

    const std::vector<u64> x1_values = cs.forced_x1() ? std::vector<u64>{*cs.forced_x1()} : [&] {
        std::vector<u64> v;
        for (u64 i = 0; i < half; ++i)
            v.push_back(2 * i);
        return v;
    }();
    for (u64 x1 : x1_values) {
        if (!x1_class_matches_case(cs))
            continue;
        for (u64 i = 0; i < half; ++i) {
            const u64 y1 = 2 * i;
            const u64 c = (ctx.two_to(x1) + ctx.b_to(y1)) % q;
            for (auto [x2, y2] : by_value[ctx.c_to_z2(c)]) {
                Tuple t{};
                unsigned k = 0;
                if (!cs.forced_x1())
                    t[k++] = x1;
                t[k++] = y1;
                if (!cs.forced_x2())
                    t[k++] = x2;
                t[k++] = y2;
                out.tuples.push_back(t);
            }
        }
    }
    out.normalize();
    return out;
}

namespace detail {

struct TupleHash {
    std::size_t operator()(const Tuple& t) const noexcept
    {
        std::size_t h = 0xcbf29ce484222325ull;
        for (u64 v : t)
            h = (h ^ v) * 0x100000001b3ull;
        return h;
    }
};

inline Tuple reduce(const Tuple& t, unsigned arity, u64 m)
{
    Tuple r{};
    for (unsigned i = 0; i < arity; ++i)
        r[i] = t[i] % m;
    return r;
}

} // namespace detail

/// Tuples mod lcm(L1, L2) whose components CRT-merge with a tuple of each input.
inline CandidateSet intersect(const CandidateSet& s1, const CandidateSet& s2)
{
    if (s1.arity != s2.arity)
        throw std::invalid_argument("intersect: arity mismatch");
    const unsigned k = s1.arity;
    const u64 g = std::gcd(s1.modulus, s2.modulus);
    CandidateSet out{lcm_checked(s1.modulus, s2.modulus), k, {}};

    std::unordered_map<Tuple, std::vector<std::size_t>, detail::TupleHash> index;
    for (std::size_t i = 0; i < s2.tuples.size(); ++i)
        index[detail::reduce(s2.tuples[i], k, g)].push_back(i);

    for (const Tuple& t1 : s1.tuples) {
        auto it = index.find(detail::reduce(t1, k, g));
        if (it == index.end())
            continue;
        for (std::size_t j : it->second) {
            const Tuple& t2 = s2.tuples[j];
            Tuple merged{};
            bool ok = true;
            for (unsigned i = 0; i < k && ok; ++i) {
                auto m = crt_merge(ResidueClass(t1[i], s1.modulus), ResidueClass(t2[i], s2.modulus));
                if (!m)
                    ok = false;
                else
                    merged[i] = m->residue();
            }
            if (ok)
                out.tuples.push_back(merged);
        }
    }
    out.normalize();
    return out;
}

/// Odd prime powers 5 <= q <= max_modulus, smooth lambda(q) first.
///
/// Sort key: largest prime factor of lambda(q), then primes before proper
/// prime powers, then q. 3 is left out since the case split already fixes
/// everything it can see.
inline std::vector<u64> default_plan(u64 max_modulus)
{
    if (max_modulus < 5)
        throw std::invalid_argument("default_plan: max_modulus must be >= 5");
    struct Entry {
        u64 gpf;
        bool proper_power;
        u64 q;
    };
    std::vector<Entry> entries;
    for (u64 q = 5; q <= max_modulus; q += 2) {
        auto base = prime_power_base(q);
        if (!base)
            continue;
        const u64 lambda = carmichael_lambda(q);
        entries.push_back({factorize(lambda).back().first, q != *base, q});
    }
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
        return std::tie(a.gpf, a.proper_power, a.q) < std::tie(b.gpf, b.proper_power, b.q);
    });
    std::vector<u64> plan;
    for (const auto& e : entries)
        plan.push_back(e.q);
    return plan;
}

struct SieveStep {
    u64 modulus;
    u64 surviving;
    friend bool operator==(const SieveStep&, const SieveStep&) = default;
};

enum class Outcome { Eliminated, Survived };

struct EliminationCertificate {
    u64 b = 0;
    CaseSplit split = CaseSplit::make(1, 17);
    std::optional<u64> z2; // empty: no admissible z2
    std::vector<SieveStep> steps;
    Outcome outcome = Outcome::Survived;
    u64 moduli_used = 0;

    friend bool operator==(const EliminationCertificate&, const EliminationCertificate&) = default;
};

struct SieveOptions {
    u64 budget = 14;
    std::size_t candidate_cap = 1'000'000;
    // lifted tuples examined per modulus before it is deferred
    std::size_t work_cap = 20'000'000;
    // largest common exponent modulus the engine will carry
    u64 max_exponent_modulus = u64{1} << 32;
};

/// Intersects `set` with local_candidates(b, z2, cs, ctx.q()) by lifting each
/// tuple to the joint modulus and testing the congruences directly.
/// Returns nothing when the work or result would exceed the options' caps.
inline std::optional<CandidateSet> sieve_step(const CandidateSet& set, const CaseSplit& cs,
                                              const ModulusContext& ctx, const SieveOptions& opt)
{
    const unsigned k = set.arity;
    const u64 L = set.modulus;
    const u64 joint = std::lcm(L, ctx.exponent_modulus());
    if (joint > opt.max_exponent_modulus)
        return std::nullopt;
    const u64 factor = joint / L;
    double work = static_cast<double>(set.size());
    for (unsigned i = 0; i < k; ++i)
        work *= static_cast<double>(factor);
    if (work > static_cast<double>(opt.work_cap))
        return std::nullopt;

    CandidateSet out{joint, k, {}};
    u64 lifts = 1;
    for (unsigned i = 0; i < k; ++i)
        lifts *= factor;
    for (const Tuple& t : set.tuples) {
        for (u64 idx = 0; idx < lifts; ++idx) {
            Tuple lifted{};
            u64 rest = idx;
            for (unsigned i = 0; i < k; ++i) {
                lifted[i] = t[i] + (rest % factor) * L;
                rest /= factor;
            }
            const Tuple e = full_exponents(cs, lifted);
            if (ctx.admits(e[0], e[1], e[2], e[3])) {
                out.tuples.push_back(lifted);
                if (out.tuples.size() > opt.candidate_cap)
                    return std::nullopt;
            }
        }
    }
    out.normalize();
    return out;
}

/// Certificate plus the tuples left standing when the run stopped.
struct EliminationRun {
    EliminationCertificate certificate;
    CandidateSet survivors;
};

/// Runs the sieve for one (b, case, z2). Moduli sharing a factor with 2b are
/// skipped; moduli that would overflow the caps are deferred and retried once
/// the rest of the plan has been applied.
inline EliminationRun run_case(u64 b, const CaseSplit& cs, u64 z2, std::span<const u64> plan,
                               const SieveOptions& opt)
{
    EliminationCertificate cert;
    cert.b = b;
    cert.split = cs;
    cert.z2 = z2;

    const auto slots = cs.free_slots();
    CandidateSet set{2, static_cast<unsigned>(slots.size()), {}};
    Tuple parity{};
    for (std::size_t i = 0; i < slots.size(); ++i)
        parity[i] = slot_parity[static_cast<unsigned>(slots[i])];
    set.tuples.push_back(parity);

    std::vector<u64> pending(plan.begin(), plan.end());
    bool progress = true;
    while (progress && !pending.empty() && !set.empty() && cert.moduli_used < opt.budget) {
        progress = false;
        std::vector<u64> deferred;
        for (u64 q : pending) {
            if (set.empty() || cert.moduli_used >= opt.budget) {
                deferred.push_back(q);
                continue;
            }
            if (q < 3 || std::gcd(q, 2 * b) != 1)
                continue;
            const ModulusContext ctx(b, z2, q);
            auto next = sieve_step(set, cs, ctx, opt);
            if (!next) {
                deferred.push_back(q);
                continue;
            }
            set = std::move(*next);
            ++cert.moduli_used;
            cert.steps.push_back({q, set.size()});
            progress = true;
        }
        pending = std::move(deferred);
    }
    cert.outcome = set.empty() ? Outcome::Eliminated : Outcome::Survived;
    return {std::move(cert), std::move(set)};
}

inline EliminationCertificate eliminate_case(u64 b, const CaseSplit& cs, u64 z2, std::span<const u64> plan,
                                             const SieveOptions& opt)
{
    return run_case(b, cs, z2, plan, opt).certificate;
}

/// One run per (case, z2); a single "no admissible z2" run per case when
/// h(-4b) has no odd divisor above 1.
inline std::vector<EliminationRun> eliminate_b_runs(u64 b, std::span<const u64> plan, const SieveOptions& opt = {})
{
    const auto cases = case_split(b);
    const auto z2s = z2_candidates(b);
    std::vector<EliminationRun> out;
    for (const auto& cs : cases) {
        if (z2s.empty()) {
            EliminationRun run;
            run.certificate.b = b;
            run.certificate.split = cs;
            run.certificate.outcome = Outcome::Eliminated;
            run.survivors.arity = cs.arity();
            out.push_back(std::move(run));
            continue;
        }
        for (u64 z2 : z2s)
            out.push_back(run_case(b, cs, z2, plan, opt));
    }
    return out;
}

inline std::vector<EliminationCertificate> eliminate_b(u64 b, std::span<const u64> plan,
                                                       const SieveOptions& opt = {})
{
    std::vector<EliminationCertificate> out;
    for (auto& run : eliminate_b_runs(b, plan, opt))
        out.push_back(std::move(run.certificate));
    return out;
}

/// Number of certificates eliminate_b emits for b.
inline std::size_t expected_certificate_count(u64 b)
{
    return case_split(b).size() * std::max<std::size_t>(1, z2_candidates(b).size());
}

} // namespace pexp
